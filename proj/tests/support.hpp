#pragma once

#include <random>

#include "bell/equivalence.hpp"
#include "bell/functional.hpp"

namespace bell::testing {

inline BellFunctional random_functional(std::mt19937_64& rng, const Scenario& s, int lo, int hi) {
  std::uniform_int_distribution<Coeff> d(lo, hi);
  BellFunctional f(s);
  for (auto& v : f.alice_marg) v = d(rng);
  for (auto& v : f.bob_marg) v = d(rng);
  for (auto& v : f.corr) v = d(rng);
  return f;
}

// Valid behavior with probabilities on the grid k/den.
inline ExactBehavior random_exact_behavior(std::mt19937_64& rng, const Scenario& s, int den = 24) {
  std::uniform_int_distribution<int> d(0, den);
  ExactBehavior p(s);
  for (auto& v : p.p_a) v = Rational(d(rng), den);
  for (auto& v : p.p_b) v = Rational(d(rng), den);
  for (int x = 0; x < s.ma; ++x) {
    for (int y = 0; y < s.mb; ++y) {
      const Rational pa = p.p_a[static_cast<std::size_t>(x)];
      const Rational pb = p.p_b[static_cast<std::size_t>(y)];
      const Rational lo = pa + pb - 1 > 0 ? Rational(pa + pb - 1) : Rational(0);
      const Rational hi = pa < pb ? pa : pb;
      const Rational t(d(rng), den);
      p.joint(x, y) = lo + (hi - lo) * t;
    }
  }
  return p;
}

inline Behavior random_behavior(std::mt19937_64& rng, const Scenario& s) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Behavior p(s);
  for (auto& v : p.p_a) v = u(rng);
  for (auto& v : p.p_b) v = u(rng);
  for (int x = 0; x < s.ma; ++x)
    for (int y = 0; y < s.mb; ++y) {
      const double pa = p.p_a[static_cast<std::size_t>(x)], pb = p.p_b[static_cast<std::size_t>(y)];
      const double lo = std::max(0.0, pa + pb - 1), hi = std::min(pa, pb);
      p.joint(x, y) = lo + (hi - lo) * u(rng);
    }
  return p;
}

inline Transformation random_transformation(std::mt19937_64& rng, const Scenario& s) {
  return transformation_at(s, std::uniform_int_distribution<std::uint64_t>(0, group_order(s) - 1)(rng));
}

} // namespace bell::testing
