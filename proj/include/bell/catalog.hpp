#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bell/functional.hpp"

namespace bell {

class LookupError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

struct CatalogEntry {
  std::string name;
  BellFunctional functional;
  Scenario native_scenario;
  bool primary = true; // false for supplementary entries such as I3322_TILDE
};

/// All entries, primary ones first in table order (CHSH, I3322, 4322, 4422).
const std::vector<CatalogEntry>& catalog_list();

/// Only the 31 primary entries.
std::vector<CatalogEntry> catalog_primary();

const CatalogEntry& catalog_get(std::string_view name);

} // namespace bell
