#pragma once

#include <cstdint>
#include <vector>

#include "bell/functional.hpp"
#include "bell/parallel.hpp"

namespace bell {

struct FacetReport {
  bool is_tight = false;
  Rational local_bound = 0;
  std::uint64_t saturating_count = 0;
  int affine_dim = -1; // -1 when no vertex saturates the bound
  int ns_dim = 0;
};

/// Free parameters of a binary-outcome no-signaling behavior.
int ns_dimension(const Scenario& s);

/// Maximum over deterministic strategies, 2^ma outer loop with Bob's
/// settings maximized independently.
Rational local_bound(const BellFunctional& f);
Coeff local_bound_int(const BellFunctional& f);

/// Plain enumeration of all 2^(ma+mb) vertices. Requires ma + mb <= 24.
Rational local_bound_bruteforce(const BellFunctional& f);

/// Strategies whose vertex value equals f.bound exactly.
std::vector<DeterministicStrategy> saturating_strategies(const BellFunctional& f);

FacetReport facet_check(const BellFunctional& f);

/// Local bounds of many functionals at once (OpenMP over the batch).
std::vector<Coeff> local_bounds(const std::vector<BellFunctional>& fs, Exec exec = Exec::parallel);

/// Rank over the rationals of an integer matrix (fraction-free elimination).
int exact_rank(std::vector<std::vector<Coeff>> rows);

} // namespace bell
