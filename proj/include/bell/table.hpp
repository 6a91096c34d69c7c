#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bell/catalog.hpp"
#include "bell/parallel.hpp"

namespace bell {

/// One row of the summary table. `violation` is the largest quantum value
/// of I found (identical to I - L for the bound-zero entries).
struct ReportRow {
  std::string name;
  double violation = 0.0;
  double theta_max_over_pi = 0.0; // in [0, 1/4]
  std::optional<double> w_max;
  std::optional<double> w;
  std::optional<double> eta;
  bool degenerate = false; // identity / zero effects were allowed
};

struct TableOptions {
  std::uint64_t seed = 0;
  int restarts = 50;
  double tol = 1e-10;
  double eta_tol = 1e-5;
  Exec exec = Exec::parallel;
};

/// Entries whose row is computed with degenerate measurements allowed.
bool row_uses_degenerate(const std::string& name);

ReportRow compute_row(const CatalogEntry& e, const TableOptions& opts);

/// All primary catalog entries, in catalog order.
std::vector<ReportRow> compute_table(const TableOptions& opts);

std::string table_csv(const std::vector<ReportRow>& rows);
std::string table_text(const std::vector<ReportRow>& rows);
nlohmann::json table_json(const std::vector<ReportRow>& rows);

} // namespace bell
