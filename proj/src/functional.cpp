#include "bell/functional.hpp"

#include <algorithm>

namespace bell {

Scenario::Scenario(int alice_settings, int bob_settings) : ma(alice_settings), mb(bob_settings) {
  if (ma < 1 || mb < 1) {
    throw StructuralError("scenario needs at least one setting per party, got " + std::to_string(ma) + "x" +
                          std::to_string(mb));
  }
  if (ma > 30 || mb > 30) throw StructuralError("scenario sizes above 30 settings are not supported");
}

std::string to_string(const Scenario& s) { return std::to_string(s.ma) + std::to_string(s.mb) + "22"; }

BellFunctional::BellFunctional(Scenario s)
    : scenario(s), alice_marg(static_cast<std::size_t>(s.ma), 0), bob_marg(static_cast<std::size_t>(s.mb), 0),
      corr(static_cast<std::size_t>(s.ma * s.mb), 0) {}

BellFunctional::BellFunctional(Scenario s, std::vector<Coeff> alice, std::vector<Coeff> bob,
                               std::vector<Coeff> correlations, Rational bound_value)
    : scenario(s), alice_marg(std::move(alice)), bob_marg(std::move(bob)), corr(std::move(correlations)),
      bound(std::move(bound_value)) {
  validate();
}

void BellFunctional::validate() const {
  const auto ma = static_cast<std::size_t>(scenario.ma);
  const auto mb = static_cast<std::size_t>(scenario.mb);
  if (alice_marg.size() != ma || bob_marg.size() != mb || corr.size() != ma * mb) {
    throw StructuralError("functional tables do not match scenario " + to_string(scenario));
  }
}

Coeff evaluate_strategy(const BellFunctional& f, const DeterministicStrategy& s) {
  Coeff v = 0;
  const int ma = f.scenario.ma;
  const int mb = f.scenario.mb;
  for (int x = 0; x < ma; ++x) {
    if (!s.alice_zero(x)) continue;
    v += f.alice_marg[static_cast<std::size_t>(x)];
    for (int y = 0; y < mb; ++y)
      if (s.bob_zero(y)) v += f.c(x, y);
  }
  for (int y = 0; y < mb; ++y)
    if (s.bob_zero(y)) v += f.bob_marg[static_cast<std::size_t>(y)];
  return v;
}

ExactBehavior behavior_of_strategy(const Scenario& sc, const DeterministicStrategy& s) {
  ExactBehavior p(sc);
  for (int x = 0; x < sc.ma; ++x) p.p_a[static_cast<std::size_t>(x)] = s.alice_zero(x) ? 1 : 0;
  for (int y = 0; y < sc.mb; ++y) p.p_b[static_cast<std::size_t>(y)] = s.bob_zero(y) ? 1 : 0;
  for (int x = 0; x < sc.ma; ++x)
    for (int y = 0; y < sc.mb; ++y) p.joint(x, y) = (s.alice_zero(x) && s.bob_zero(y)) ? 1 : 0;
  return p;
}

ExactBehavior uniform_behavior(const Scenario& sc) {
  ExactBehavior p(sc);
  std::fill(p.p_a.begin(), p.p_a.end(), Rational(1, 2));
  std::fill(p.p_b.begin(), p.p_b.end(), Rational(1, 2));
  std::fill(p.p_ab.begin(), p.p_ab.end(), Rational(1, 4));
  return p;
}

namespace {

template <class T>
bool box_ok(const BasicBehavior<T>& p, const T& tol) {
  const auto& sc = p.scenario;
  for (const auto& v : p.p_a)
    if (v < -tol || v > T(1) + tol) return false;
  for (const auto& v : p.p_b)
    if (v < -tol || v > T(1) + tol) return false;
  for (int x = 0; x < sc.ma; ++x) {
    for (int y = 0; y < sc.mb; ++y) {
      const T& pa = p.p_a[static_cast<std::size_t>(x)];
      const T& pb = p.p_b[static_cast<std::size_t>(y)];
      const T& pj = p.joint(x, y);
      // all four joint outcome probabilities nonnegative
      if (pj < -tol) return false;
      if (pa - pj < -tol) return false;
      if (pb - pj < -tol) return false;
      if (T(1) - pa - pb + pj < -tol) return false;
    }
  }
  return true;
}

} // namespace

bool is_valid_behavior(const Behavior& p, double tol) { return box_ok<double>(p, tol); }
bool is_valid_behavior(const ExactBehavior& p) { return box_ok<Rational>(p, Rational(0)); }

std::string rational_to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace bell
