#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bell/functional.hpp"
#include "bell/parallel.hpp"

namespace bell {

/// Element of the relabeling group of a scenario.
///
/// Applied in three stages: output flips on the original setting labels,
/// then setting permutations (alice_perm[x] is the new index of Alice's
/// setting x), then an optional exchange of the two parties.
struct Transformation {
  std::vector<int> alice_perm;
  std::vector<int> bob_perm;
  std::uint32_t alice_flips = 0;
  std::uint32_t bob_flips = 0;
  bool swap_parties = false;

  static Transformation identity(const Scenario& s);
  friend bool operator==(const Transformation&, const Transformation&) = default;
};

/// Throws StructuralError when t does not act on scenario s.
void validate_transformation(const Transformation& t, const Scenario& s);

/// Functional f' with  f(p) - f.bound == f'(p') - f'.bound  for p' = relabel(p, t).
BellFunctional apply_transformation(const BellFunctional& f, const Transformation& t);

template <class T>
BasicBehavior<T> relabel_behavior(const BasicBehavior<T>& p, const Transformation& t);

/// "first, then second".
Transformation compose(const Transformation& second, const Transformation& first);
Transformation inverse(const Transformation& t);

/// |G| = ma! mb! 2^(ma+mb) (times 2 when ma == mb).
std::uint64_t group_order(const Scenario& s);

/// Decodes index in [0, group_order) to a group element.
Transformation transformation_at(const Scenario& s, std::uint64_t index);

/// Lexicographic order on (bound, alice_marg, bob_marg, corr row-major).
bool lex_less(const BellFunctional& a, const BellFunctional& b);

/// Lexicographically minimal element of the orbit.
BellFunctional canonical_form(const BellFunctional& f, Exec exec = Exec::parallel);

/// Same result by applying every group element in turn; slow, for testing.
BellFunctional canonical_form_reference(const BellFunctional& f);

bool equivalent(const BellFunctional& f, const BellFunctional& g);

/// Orbit element with alice_marg == bob_marg and symmetric corr, if any.
std::optional<BellFunctional> symmetric_representative(const BellFunctional& f);

} // namespace bell
