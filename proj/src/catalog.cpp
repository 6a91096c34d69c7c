#include "bell/catalog.hpp"

#include "bell/text_format.hpp"

namespace bell {

namespace {

struct RawEntry {
  const char* name;
  const char* text;
  bool primary;
};

// Tables in their printed orientation: Bob marginals on top, then one row
// per Alice setting with its marginal in front of the bar.
constexpr RawEntry kRaw[] = {
    {"CHSH", R"(bell 2 2 0
bob -1 0
-1 | 1  1
 0 | 1 -1
)", true},
    {"I3322", R"(bell 3 3 0
bob -1 0 0
-2 | 1  1  1
-1 | 1  1 -1
 0 | 1 -1  0
)", true},
    {"I4322_1", R"(bell 4 3 0
bob -1 0 0
-2 | 1  1  1
-1 | 1 -1  1
-1 | 1  1 -1
 0 | 1 -1 -1
)", true},
    {"I4322_2", R"(bell 4 3 0
bob -2 -1 0
-1 | 1  1  1
 0 | 0  1 -1
 0 | 1 -1  0
 0 | 1  0 -1
)", true},
    {"I4322_3", R"(bell 4 3 0
bob -1 -1 0
-2 |  2  1  1
-1 | -1  1  1
 0 |  0  1 -1
 0 |  1 -1 -1
)", true},
    {"I4422_1", R"(bell 4 4 0
bob -1 -1 -1 0
-1 | 0  0  1  1
-1 | 0  1 -1  1
-1 | 1 -1 -1  1
 0 | 1  1  1 -1
)", true},
    {"I4422_2", R"(bell 4 4 0
bob -3 -1 0 0
-2 | 2  1  2  0
-1 | 1  1 -1  1
 0 | 2 -2 -1  0
 0 | 1  1 -1 -1
)", true},
    {"A5", R"(bell 4 4 0
bob -1 -1 -1 0
-1 | 0  1  1  1
-1 | 1  1  1 -1
-1 | 1  1 -1  0
 0 | 1 -1  0  0
)", true},
    {"A6", R"(bell 4 4 0
bob -1 -1 0 0
-1 | 1  1  0  1
-1 | 1  0  1 -1
 0 | 0  1 -1 -1
 0 | 1 -1 -1 -1
)", true},
    {"AS1", R"(bell 4 4 0
bob -2 -1 0 0
-2 | 1  1  1  1
-1 | 1  1  1 -1
 0 | 1  1 -2  0
 0 | 1 -1  0  0
)", true},
    {"AS2", R"(bell 4 4 0
bob -3 -1 -1 0
-3 | 1  1  2  2
-1 | 1  2  1 -2
-1 | 2  1 -2  1
 0 | 2 -2  1 -1
)", true},
    {"AII1", R"(bell 4 4 0
bob -1 -1 -1 0
-1 | -1  1  1  1
-1 |  1  0  2 -1
-1 |  1  2 -1 -1
 0 |  1 -1 -1  0
)", true},
    {"AII2", R"(bell 4 4 0
bob -3 -1 0 -1
-1 | 2  1  1 -1
-1 | 1  2 -1  1
 0 | 1 -1 -1  1
 0 | 1 -1  0  0
)", true},
    {"I4422_3", R"(bell 4 4 0
bob -2 -1 -1 0
-1 | 1  1  1  1
 0 | 0  1  0 -1
 0 | 1 -1  1 -1
 0 | 1  0 -1  0
)", true},
    {"I4422_4", R"(bell 4 4 0
bob -1 -1 0 0
-1 |  1  1  1 -1
-1 |  1  1 -1  1
 0 |  1 -1 -1 -1
 0 | -1  1 -1 -1
)", true},
    {"I4422_5", R"(bell 4 4 0
bob -2 -1 0 0
-1 | 1  0  1  0
-1 | 1  1 -1  1
 0 | 1 -1  0  0
 0 | 1  1 -1 -1
)", true},
    {"I4422_6", R"(bell 4 4 0
bob -2 -1 -1 0
-1 | 1 -1  1  1
-1 | 1  1 -1  1
 0 | 1 -1  1 -1
 0 | 1  1 -1 -1
)", true},
    {"I4422_7", R"(bell 4 4 1
bob -1 0 0 0
-1 |  2 -1 -1  1
 0 | -1 -1  0  1
 0 |  0  1 -1  0
 0 |  1  0  1 -1
)", true},
    {"I4422_8", R"(bell 4 4 0
bob -2 -1 -1 0
-2 | 1  1  2  1
-1 | 1  2 -2  0
-1 | 2 -2 -1  1
 0 | 1  0  1 -2
)", true},
    {"I4422_9", R"(bell 4 4 0
bob -2 -1 -1 0
-2 | 1  1  2  1
-1 | 1  2 -2  0
-1 | 2 -2 -2  1
 0 | 1  0  1 -1
)", true},
    {"I4422_10", R"(bell 4 4 0
bob -2 -1 -1 0
-2 | 1  1  1  2
-1 | 1  1  2 -2
-1 | 1  2 -2 -1
 0 | 2 -2 -1 -1
)", true},
    {"I4422_11", R"(bell 4 4 0
bob -2 -1 -1 0
-2 | 1  1  1  2
-1 | 1  0  2 -1
-1 | 1  2 -1 -1
 0 | 2 -1 -1 -1
)", true},
    {"I4422_12", R"(bell 4 4 0
bob -2 -1 -1 0
-2 | 1  1  1  2
-1 | 1 -1  1  0
-1 | 1  1  2 -2
 0 | 2  0 -2 -1
)", true},
    {"I4422_13", R"(bell 4 4 0
bob -2 -1 -1 0
-2 | 0  1  1  1
-1 | 1 -2  1  1
-1 | 1  1 -1  1
 0 | 1  1  1 -1
)", true},
    {"I4422_14", R"(bell 4 4 0
bob -2 -1 0 0
-2 | 2  2  0  1
-1 | 2 -1  1 -1
 0 | 0  1 -1 -1
 0 | 1 -1 -1  0
)", true},
    {"I4422_15", R"(bell 4 4 0
bob -2 -1 0 0
-2 | 2  1  1  1
-1 | 1 -1 -1  1
 0 | 1 -1  0 -1
 0 | 1  1 -1 -1
)", true},
    {"I4422_16", R"(bell 4 4 0
bob -2 -1 0 0
-2 | 2  0  1  1
-1 | 0  1 -1  1
 0 | 1 -1 -1  0
 0 | 1  1  0 -1
)", true},
    {"I4422_17", R"(bell 4 4 0
bob -2 -1 -1 -1
-2 | -1  1  2  2
-1 |  1 -1 -1  2
-1 |  2 -1  2 -1
-1 |  2  2 -1  0
)", true},
    {"I4422_18", R"(bell 4 4 0
bob -2 -2 0 0
-2 |  2  2  2 -1
-2 |  2  1 -2  2
 0 |  2 -2 -2 -2
 0 | -1  2 -2 -1
)", true},
    {"I4422_19", R"(bell 4 4 0
bob -3 -2 0 0
-3 | 2  2  1  2
-2 | 2 -1  2 -2
 0 | 1  2 -1 -1
 0 | 2 -2 -1  0
)", true},
    {"I4422_20", R"(bell 4 4 0
bob -2 -2 -2 0
-2 | -1  1  1  2
-2 |  1 -1  1  2
-2 |  1  1 -2  2
 0 |  2  2  2 -2
)", true},
    // symmetric relabeling of I3322
    {"I3322_TILDE", R"(bell 3 3 0
bob -1 -1 0
-1 | 0  1  1
-1 | 1 -1  1
 0 | 1  1 -1
)", false},
};

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  for (const auto& raw : kRaw) {
    BellFunctional f = parse_functional(raw.text);
    out.push_back(CatalogEntry{raw.name, f, f.scenario, raw.primary});
  }
  return out;
}

} // namespace

const std::vector<CatalogEntry>& catalog_list() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

std::vector<CatalogEntry> catalog_primary() {
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog_list())
    if (e.primary) out.push_back(e);
  return out;
}

const CatalogEntry& catalog_get(std::string_view name) {
  for (const auto& e : catalog_list())
    if (e.name == name) return e;
  std::string names;
  for (const auto& e : catalog_list()) names += (names.empty() ? "" : ", ") + e.name;
  throw LookupError("unknown catalog entry '" + std::string(name) + "'; valid names: " + names);
}

} // namespace bell
