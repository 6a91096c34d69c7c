#pragma once

// Core objects for bipartite Bell scenarios with binary outcomes.
//
// Everything is written in the "probability of outcome 0" coordinates:
// a behavior is the triple (P(a=0|x), P(b=0|y), P(a=0,b=0|x,y)) and a
// Bell functional is an integer table of coefficients in front of those
// probabilities, together with an exact rational bound.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bell {

using Coeff = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when dimensions or scenario sizes do not fit together.
class StructuralError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed a configured size cap.
class CapacityError : public std::length_error {
public:
  using std::length_error::length_error;
};

struct Scenario {
  int ma = 1;
  int mb = 1;

  Scenario() = default;
  Scenario(int alice_settings, int bob_settings);

  int settings() const { return ma + mb; }
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

std::string to_string(const Scenario& s);

/// Integer coefficient table plus bound, read as  I(p) <= bound.
struct BellFunctional {
  Scenario scenario;
  std::vector<Coeff> alice_marg; // M(A_x), length ma
  std::vector<Coeff> bob_marg;   // M(B_y), length mb
  std::vector<Coeff> corr;       // C(A_x,B_y), row-major ma x mb
  Rational bound = 0;

  BellFunctional() = default;
  explicit BellFunctional(Scenario s);
  BellFunctional(Scenario s, std::vector<Coeff> alice, std::vector<Coeff> bob,
                 std::vector<Coeff> correlations, Rational bound_value);

  Coeff c(int x, int y) const { return corr[static_cast<std::size_t>(x * scenario.mb + y)]; }
  Coeff& c(int x, int y) { return corr[static_cast<std::size_t>(x * scenario.mb + y)]; }

  /// Throws StructuralError if vector sizes disagree with the scenario.
  void validate() const;

  friend bool operator==(const BellFunctional&, const BellFunctional&) = default;
};

/// One output bit per setting; bit x set means "outputs 0 on setting x".
struct DeterministicStrategy {
  std::uint32_t alice = 0;
  std::uint32_t bob = 0;

  bool alice_zero(int x) const { return (alice >> x) & 1u; }
  bool bob_zero(int y) const { return (bob >> y) & 1u; }
  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

template <class T>
struct BasicBehavior {
  Scenario scenario;
  std::vector<T> p_a;  // P(a=0|x)
  std::vector<T> p_b;  // P(b=0|y)
  std::vector<T> p_ab; // P(00|xy), row-major

  BasicBehavior() = default;
  explicit BasicBehavior(Scenario s)
      : scenario(s), p_a(static_cast<std::size_t>(s.ma)), p_b(static_cast<std::size_t>(s.mb)),
        p_ab(static_cast<std::size_t>(s.ma * s.mb)) {}

  const T& joint(int x, int y) const { return p_ab[static_cast<std::size_t>(x * scenario.mb + y)]; }
  T& joint(int x, int y) { return p_ab[static_cast<std::size_t>(x * scenario.mb + y)]; }
};

using Behavior = BasicBehavior<double>;
using ExactBehavior = BasicBehavior<Rational>;

/// Linear form value  sum M(A)p_a + sum M(B)p_b + sum C p_ab.
template <class T>
T evaluate(const BellFunctional& f, const BasicBehavior<T>& p) {
  if (!(f.scenario == p.scenario)) {
    throw StructuralError("evaluate: functional is " + to_string(f.scenario) + " but behavior is " +
                          to_string(p.scenario));
  }
  T total = 0;
  for (int x = 0; x < f.scenario.ma; ++x) total += T(f.alice_marg[static_cast<std::size_t>(x)]) * p.p_a[static_cast<std::size_t>(x)];
  for (int y = 0; y < f.scenario.mb; ++y) total += T(f.bob_marg[static_cast<std::size_t>(y)]) * p.p_b[static_cast<std::size_t>(y)];
  for (std::size_t k = 0; k < f.corr.size(); ++k) total += T(f.corr[k]) * p.p_ab[k];
  return total;
}

/// Integer value of f on the vertex of a deterministic strategy.
Coeff evaluate_strategy(const BellFunctional& f, const DeterministicStrategy& s);

ExactBehavior behavior_of_strategy(const Scenario& sc, const DeterministicStrategy& s);

/// Uniform behavior p_a = p_b = 1/2, p_ab = 1/4.
ExactBehavior uniform_behavior(const Scenario& sc);

/// Checks the probability-box constraints of a behavior within `tol`.
bool is_valid_behavior(const Behavior& p, double tol = 1e-12);
bool is_valid_behavior(const ExactBehavior& p);

std::string rational_to_string(const Rational& r);
double to_double(const Rational& r);

} // namespace bell
