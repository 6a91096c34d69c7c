#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bell/functional.hpp"
#include "bell/parallel.hpp"

namespace bell {

enum class SearchMode { exhaustive, random };

/// Candidate tables: integer correlations in [corr_min, corr_max] and
/// marginals  marg_min <= M(0) < M(1) <= ... <= M(m-1) = 0  for both parties
/// (the first inequality is non-strict when strict_first is off).
struct SearchConfig {
  Scenario scenario{4, 4};
  int corr_min = -2;
  int corr_max = 2;
  int marg_min = -3;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t sample_count = 100000;
  std::uint64_t seed = 0;
  bool strict_first = true;
  std::uint64_t exhaustive_cap = 100000000;
  Exec exec = Exec::parallel;

  void validate() const;
};

/// Admissible marginal vectors of length m, in lexicographic order.
std::vector<std::vector<Coeff>> marginal_sequences(int m, int marg_min, bool strict_first);

/// Size of the exhaustive candidate space (saturates at UINT64_MAX).
std::uint64_t candidate_count(const SearchConfig& cfg);

/// The i-th candidate: exhaustive order for exhaustive mode, the i-th seeded
/// sample in random mode. The bound is set to the local bound.
BellFunctional candidate_at(const SearchConfig& cfg, std::uint64_t index);

/// Number of candidates run_search visits.
std::uint64_t candidates_to_test(const SearchConfig& cfg);

/// Divides coefficients and bound by their common gcd.
BellFunctional primitive_form(const BellFunctional& f);

/// -p(00|00) <= 0 in the given scenario.
BellFunctional positivity_functional(const Scenario& s);

/// Pads f with zero coefficients (swapping parties first when only the
/// swapped table fits). Empty when f does not fit into s either way.
std::optional<BellFunctional> lift_to(const BellFunctional& f, const Scenario& s);

struct FoundFacet {
  BellFunctional functional; // first candidate of the class, primitive
  BellFunctional canonical;
  std::optional<std::string> known_as;
  std::uint64_t first_index = 0;
  std::uint64_t hits = 0;
};

struct SearchReport {
  Scenario scenario;
  std::uint64_t candidates_tested = 0;
  std::uint64_t tight_count = 0;   // tight candidates, trivial ones included
  std::uint64_t trivial_count = 0; // positivity facets, not listed
  std::vector<FoundFacet> facets_found;
  int new_count = 0;
};

SearchReport run_search(const SearchConfig& cfg);

nlohmann::json search_report_to_json(const SearchReport& r);

/// report.json plus one .bell file per class in `dir`.
void write_search_outputs(const SearchReport& r, const std::string& dir);

} // namespace bell
