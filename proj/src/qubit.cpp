#include "bell/qubit.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace bell {

namespace {

using cd = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Vec4c = Eigen::Vector4cd;

const std::array<Mat2c, 4>& paulis() {
  static const std::array<Mat2c, 4> p = [] {
    std::array<Mat2c, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, cd(0, -1), cd(0, 1), 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return p;
}

Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}

// sigma_mu (x) sigma_nu, indexed 4*mu + nu
const std::array<Mat4c, 16>& pauli_pairs() {
  static const std::array<Mat4c, 16> p = [] {
    std::array<Mat4c, 16> out;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) out[static_cast<std::size_t>(4 * mu + nu)] = kron(paulis()[static_cast<std::size_t>(mu)], paulis()[static_cast<std::size_t>(nu)]);
    return out;
  }();
  return p;
}

Eigen::Matrix4d correlations_of(const Vec4c& psi) {
  Eigen::Matrix4d r;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      r(mu, nu) = (psi.adjoint() * pauli_pairs()[static_cast<std::size_t>(4 * mu + nu)] * psi)(0, 0).real();
  return r;
}

Vec4c schmidt_vector(double theta) {
  Vec4c psi = Vec4c::Zero();
  psi(0) = std::cos(theta);
  psi(3) = std::sin(theta);
  return psi;
}

Mat2c effect_matrix(const Eigen::Vector4d& u) {
  const auto& s = paulis();
  return u(0) * s[0] + u(1) * s[1] + u(2) * s[2] + u(3) * s[3];
}

Eigen::Vector4d effect_vector(const Mat2c& e) {
  const auto& s = paulis();
  Eigen::Vector4d u;
  for (int i = 0; i < 4; ++i) u(i) = 0.5 * (e * s[static_cast<std::size_t>(i)]).trace().real();
  return u;
}

// Optimal outcome-0 effect for the linear objective u . k.
Measurement best_effect(const Eigen::Vector4d& k, bool allow_degenerate, const Measurement& current) {
  const Eigen::Vector3d dir = k.tail<3>();
  const double norm = dir.norm();
  Measurement proj;
  if (norm > 1e-14) {
    proj = Measurement{Measurement::Kind::projector, {dir(0) / norm, dir(1) / norm, dir(2) / norm}};
  } else {
    proj = current.kind == Measurement::Kind::projector ? current : Measurement{};
  }
  if (!allow_degenerate) return proj;
  const double v_proj = 0.5 * (k(0) + norm);
  const double v_id = k(0);
  constexpr double eps = 1e-14;
  if (v_id > v_proj + eps && v_id > eps) return Measurement::identity();
  if (0.0 > v_proj + eps && 0.0 > v_id + eps) return Measurement::zero();
  return proj;
}

struct Engine {
  const RealFunctional& f;
  bool allow_degenerate;
  std::vector<Eigen::Vector4d> u, v;
  std::vector<Measurement> mu, mv;
  Eigen::Matrix4d r;

  Eigen::Matrix4d weights() const {
    Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
    const Eigen::Vector4d e0 = Eigen::Vector4d::UnitX();
    for (int x = 0; x < f.scenario.ma; ++x) w += f.alice[static_cast<std::size_t>(x)] * u[static_cast<std::size_t>(x)] * e0.transpose();
    for (int y = 0; y < f.scenario.mb; ++y) w += f.bob[static_cast<std::size_t>(y)] * e0 * v[static_cast<std::size_t>(y)].transpose();
    for (int x = 0; x < f.scenario.ma; ++x)
      for (int y = 0; y < f.scenario.mb; ++y) w += f.c(x, y) * u[static_cast<std::size_t>(x)] * v[static_cast<std::size_t>(y)].transpose();
    return w;
  }

  double value() const { return f.offset + weights().cwiseProduct(r).sum(); }

  void update_alice() {
    for (int x = 0; x < f.scenario.ma; ++x) {
      Eigen::Vector4d w = f.alice[static_cast<std::size_t>(x)] * Eigen::Vector4d::UnitX();
      for (int y = 0; y < f.scenario.mb; ++y) w += f.c(x, y) * v[static_cast<std::size_t>(y)];
      mu[static_cast<std::size_t>(x)] = best_effect(r * w, allow_degenerate, mu[static_cast<std::size_t>(x)]);
      u[static_cast<std::size_t>(x)] = mu[static_cast<std::size_t>(x)].effect();
    }
  }

  void update_bob() {
    for (int y = 0; y < f.scenario.mb; ++y) {
      Eigen::Vector4d w = f.bob[static_cast<std::size_t>(y)] * Eigen::Vector4d::UnitX();
      for (int x = 0; x < f.scenario.ma; ++x) w += f.c(x, y) * u[static_cast<std::size_t>(x)];
      mv[static_cast<std::size_t>(y)] = best_effect(r.transpose() * w, allow_degenerate, mv[static_cast<std::size_t>(y)]);
      v[static_cast<std::size_t>(y)] = mv[static_cast<std::size_t>(y)].effect();
    }
  }

  // Top eigenvector of the Bell operator; returns it.
  Vec4c update_state() {
    const Eigen::Matrix4d w = weights();
    Mat4c b = Mat4c::Zero();
    for (int i = 0; i < 16; ++i) b += w(i / 4, i % 4) * pauli_pairs()[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Mat4c> es(b);
    Vec4c psi = es.eigenvectors().col(3);
    r = correlations_of(psi);
    return psi;
  }
};

} // namespace

Measurement Measurement::projector(std::array<double, 3> v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(n > 0.0)) throw std::invalid_argument("projector needs a nonzero Bloch vector");
  return {Kind::projector, {v[0] / n, v[1] / n, v[2] / n}};
}

Eigen::Vector4d Measurement::effect() const {
  switch (kind) {
  case Kind::always_zero:
    return Eigen::Vector4d(1.0, 0.0, 0.0, 0.0);
  case Kind::always_one:
    return Eigen::Vector4d::Zero();
  case Kind::projector:
    break;
  }
  return Eigen::Vector4d(0.5, 0.5 * bloch[0], 0.5 * bloch[1], 0.5 * bloch[2]);
}

Eigen::Matrix4d schmidt_correlations(double theta) {
  const double c = std::cos(2 * theta);
  const double s = std::sin(2 * theta);
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r(0, 0) = 1.0;
  r(3, 0) = c;
  r(0, 3) = c;
  r(1, 1) = s;
  r(2, 2) = -s;
  r(3, 3) = 1.0;
  return r;
}

Eigen::Matrix4d noisy_correlations(double theta, double w) {
  Eigen::Matrix4d r = w * schmidt_correlations(theta);
  r(0, 0) = 1.0;
  return r;
}

Behavior behavior_on_state(const Eigen::Matrix4d& state, std::span<const Measurement> alice,
                           std::span<const Measurement> bob) {
  Behavior p(Scenario(static_cast<int>(alice.size()), static_cast<int>(bob.size())));
  const Eigen::Vector4d e0 = Eigen::Vector4d::UnitX();
  for (std::size_t x = 0; x < alice.size(); ++x) p.p_a[x] = alice[x].effect().dot(state * e0);
  for (std::size_t y = 0; y < bob.size(); ++y) p.p_b[y] = e0.dot(state * bob[y].effect());
  for (std::size_t x = 0; x < alice.size(); ++x)
    for (std::size_t y = 0; y < bob.size(); ++y)
      p.joint(static_cast<int>(x), static_cast<int>(y)) = alice[x].effect().dot(state * bob[y].effect());
  return p;
}

Behavior model_behavior(const QubitModel& m) {
  return behavior_on_state(schmidt_correlations(m.theta), m.alice, m.bob);
}

JointGradient joint_probability_gradient(double theta, double ap, double aa, double bp, double ba) {
  const double c2 = std::cos(2 * theta);
  const double s2 = std::sin(2 * theta);
  const double ca = std::cos(ap), sa = std::sin(ap);
  const double cb = std::cos(bp), sb = std::sin(bp);
  const double cphi = std::cos(aa + ba), sphi = std::sin(aa + ba);
  JointGradient g{};
  g.value = 0.25 * (1 + c2 * (ca + cb) + ca * cb + s2 * sa * sb * cphi);
  g.d_theta = 0.25 * (-2 * s2 * (ca + cb) + 2 * c2 * sa * sb * cphi);
  g.d_alice_polar = 0.25 * (-c2 * sa - sa * cb + s2 * ca * sb * cphi);
  g.d_bob_polar = 0.25 * (-c2 * sb - ca * sb + s2 * sa * cb * cphi);
  g.d_alice_azimuth = -0.25 * s2 * sa * sb * sphi;
  g.d_bob_azimuth = g.d_alice_azimuth;
  return g;
}

RealFunctional RealFunctional::from(const BellFunctional& f) {
  f.validate();
  RealFunctional r;
  r.scenario = f.scenario;
  for (Coeff v : f.alice_marg) r.alice.push_back(static_cast<double>(v));
  for (Coeff v : f.bob_marg) r.bob.push_back(static_cast<double>(v));
  for (Coeff v : f.corr) r.corr.push_back(static_cast<double>(v));
  return r;
}

double RealFunctional::evaluate(const Behavior& p) const {
  if (!(p.scenario == scenario)) throw StructuralError("behavior scenario does not match functional");
  double t = offset;
  for (std::size_t x = 0; x < alice.size(); ++x) t += alice[x] * p.p_a[x];
  for (std::size_t y = 0; y < bob.size(); ++y) t += bob[y] * p.p_b[y];
  for (std::size_t k = 0; k < corr.size(); ++k) t += corr[k] * p.p_ab[k];
  return t;
}

SeesawRun seesaw_run(const RealFunctional& f, const std::optional<Eigen::Matrix4d>& fixed_state,
                     const QubitModel& start, bool allow_degenerate, double tol, int max_sweeps, bool record_trace) {
  if (!(start.scenario() == f.scenario)) throw StructuralError("start model does not match functional scenario");
  Engine e{f, allow_degenerate, {}, {}, start.alice, start.bob, {}};
  for (const auto& m : e.mu) e.u.push_back(m.effect());
  for (const auto& m : e.mv) e.v.push_back(m.effect());
  const bool free_state = !fixed_state.has_value();
  Vec4c psi = schmidt_vector(start.theta);
  e.r = free_state ? correlations_of(psi) : *fixed_state;

  SeesawRun run;
  double current = e.value();
  if (record_trace) run.trace.push_back(current);
  int sweep = 0;
  while (sweep < max_sweeps) {
    ++sweep;
    const double before = current;
    e.update_alice();
    if (record_trace) run.trace.push_back(e.value());
    e.update_bob();
    if (record_trace) run.trace.push_back(e.value());
    if (free_state) {
      psi = e.update_state();
      if (record_trace) run.trace.push_back(e.value());
    }
    current = e.value();
    if (current - before < tol) break;
  }
  run.sweeps = sweep;
  run.value = current;

  if (!free_state) {
    run.model = QubitModel{start.theta, e.mu, e.mv};
    return run;
  }

  // Rotate into Schmidt form: psi = (U_A (x) U_B)(cos t|00> + sin t|11>).
  Mat2c coeffs;
  coeffs << psi(0), psi(1), psi(2), psi(3);
  Eigen::JacobiSVD<Mat2c> svd(coeffs, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector2d s = svd.singularValues();
  const Mat2c ua = svd.matrixU();
  const Mat2c ub = svd.matrixV().conjugate();
  run.model.theta = std::atan2(s(1), s(0));
  auto rotate = [](const Measurement& m, const Mat2c& un) {
    if (m.kind != Measurement::Kind::projector) return m;
    const Eigen::Vector4d u = effect_vector(un.adjoint() * effect_matrix(m.effect()) * un);
    return Measurement::projector({u(1), u(2), u(3)});
  };
  for (const auto& m : e.mu) run.model.alice.push_back(rotate(m, ua));
  for (const auto& m : e.mv) run.model.bob.push_back(rotate(m, ub));
  return run;
}

QubitModel random_model(const Scenario& s, std::uint64_t seed, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(restart >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> angle(0.0, M_PI / 4);
  QubitModel m;
  m.theta = angle(rng);
  auto draw = [&] {
    std::array<double, 3> v{};
    double n = 0.0;
    while (n < 1e-8) {
      for (auto& c : v) c = normal(rng);
      n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    }
    return Measurement::projector(v);
  };
  for (int x = 0; x < s.ma; ++x) m.alice.push_back(draw());
  for (int y = 0; y < s.mb; ++y) m.bob.push_back(draw());
  return m;
}

SeesawRun seesaw_best(const RealFunctional& f, const std::optional<Eigen::Matrix4d>& fixed_state,
                      const SeesawOptions& opts, std::span<const QubitModel> warm) {
  if (opts.restarts < 1 && warm.empty()) throw std::invalid_argument("see-saw needs at least one restart");
  const auto nwarm = static_cast<std::int64_t>(warm.size());
  const std::int64_t total = nwarm + std::max(opts.restarts, 0);
  std::vector<SeesawRun> runs(static_cast<std::size_t>(total));
  auto one = [&](std::int64_t i) {
    QubitModel start = i < nwarm ? warm[static_cast<std::size_t>(i)]
                                 : random_model(f.scenario, opts.seed, static_cast<std::uint64_t>(i - nwarm));
    if (opts.theta) start.theta = *opts.theta;
    runs[static_cast<std::size_t>(i)] =
        seesaw_run(f, fixed_state, start, opts.allow_degenerate, opts.tol, opts.max_sweeps);
  };
  if (opts.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < total; ++i) one(i);
  } else {
    for (std::int64_t i = 0; i < total; ++i) one(i);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value > runs[best].value) best = i;
  return runs[best];
}

QuantumResult seesaw_maximize(const BellFunctional& f, const SeesawOptions& opts) {
  if (opts.restarts < 1) throw std::invalid_argument("see-saw needs at least one restart");
  if (opts.theta && (*opts.theta < 0.0 || *opts.theta > M_PI / 4 + 1e-12)) {
    throw std::invalid_argument("Schmidt angle must lie in [0, pi/4]");
  }
  const RealFunctional rf = RealFunctional::from(f);
  std::optional<Eigen::Matrix4d> fixed;
  if (opts.theta) fixed = schmidt_correlations(*opts.theta);
  const SeesawRun best = seesaw_best(rf, fixed, opts);
  QuantumResult res;
  res.value = best.value;
  res.violation = best.value - to_double(f.bound);
  res.model = best.model;
  res.theta_max = best.model.theta;
  res.restarts_used = opts.restarts;
  return res;
}

double quantum_value_at(const BellFunctional& f, double theta, bool allow_degenerate, SeesawOptions opts) {
  opts.theta = theta;
  opts.allow_degenerate = allow_degenerate;
  return seesaw_maximize(f, opts).value;
}

} // namespace bell
