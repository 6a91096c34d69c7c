#include "bell/robustness.hpp"

#include <cmath>

namespace bell {

Rational noise_floor(const BellFunctional& f) { return evaluate(f, uniform_behavior(f.scenario)); }

std::optional<NoiseResult> noise_threshold(const BellFunctional& f, double theta, const SeesawOptions& opts,
                                           double w_tol) {
  if (!(theta > 0.0) || theta > M_PI / 4 + 1e-12) throw std::invalid_argument("noise threshold needs theta in (0, pi/4]");
  const double bound = to_double(f.bound);
  SeesawOptions o = opts;
  o.theta = theta;

  if (!opts.allow_degenerate) {
    const QuantumResult q = seesaw_maximize(f, o);
    if (q.value <= bound + 1e-9) return std::nullopt;
    const double floor = to_double(noise_floor(f));
    return NoiseResult{(bound - floor) / (q.value - floor), theta, q.model};
  }

  const RealFunctional rf = RealFunctional::from(f);
  std::vector<QubitModel> warm;
  auto best_at = [&](double w) { return seesaw_best(rf, noisy_correlations(theta, w), o, warm); };

  SeesawRun top = best_at(1.0);
  if (top.value <= bound + 1e-9) return std::nullopt;
  QubitModel model = top.model;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > w_tol) {
    const double mid = 0.5 * (lo + hi);
    warm.assign(1, model);
    const SeesawRun r = best_at(mid);
    if (r.value > bound + 1e-9) {
      hi = mid;
      model = r.model;
    } else {
      lo = mid;
    }
  }
  model.theta = theta;
  return NoiseResult{hi, theta, model};
}

Behavior detected_behavior(const Behavior& p, const DetectionModel& d) {
  const auto& sc = p.scenario;
  const double ea = d.eta_a;
  const double eb = d.eta_b;
  Behavior q(sc);
  for (int x = 0; x < sc.ma; ++x) {
    const double sa = d.noclick.alice_zero(x) ? 1.0 : 0.0;
    q.p_a[static_cast<std::size_t>(x)] = ea * p.p_a[static_cast<std::size_t>(x)] + (1 - ea) * sa;
  }
  for (int y = 0; y < sc.mb; ++y) {
    const double sb = d.noclick.bob_zero(y) ? 1.0 : 0.0;
    q.p_b[static_cast<std::size_t>(y)] = eb * p.p_b[static_cast<std::size_t>(y)] + (1 - eb) * sb;
  }
  for (int x = 0; x < sc.ma; ++x) {
    const double sa = d.noclick.alice_zero(x) ? 1.0 : 0.0;
    for (int y = 0; y < sc.mb; ++y) {
      const double sb = d.noclick.bob_zero(y) ? 1.0 : 0.0;
      q.joint(x, y) = ea * eb * p.joint(x, y) + ea * (1 - eb) * p.p_a[static_cast<std::size_t>(x)] * sb +
                      (1 - ea) * eb * sa * p.p_b[static_cast<std::size_t>(y)] + (1 - ea) * (1 - eb) * sa * sb;
    }
  }
  return q;
}

RealFunctional detection_functional(const BellFunctional& f, const DetectionModel& d) {
  const RealFunctional base = RealFunctional::from(f);
  const auto& sc = f.scenario;
  const double ea = d.eta_a;
  const double eb = d.eta_b;
  RealFunctional g = base;
  g.offset = 0.0;
  for (int x = 0; x < sc.ma; ++x) {
    double s = 0.0;
    for (int y = 0; y < sc.mb; ++y)
      if (d.noclick.bob_zero(y)) s += base.c(x, y);
    g.alice[static_cast<std::size_t>(x)] = ea * base.alice[static_cast<std::size_t>(x)] + ea * (1 - eb) * s;
    if (d.noclick.alice_zero(x)) g.offset += (1 - ea) * base.alice[static_cast<std::size_t>(x)];
  }
  for (int y = 0; y < sc.mb; ++y) {
    double s = 0.0;
    for (int x = 0; x < sc.ma; ++x)
      if (d.noclick.alice_zero(x)) s += base.c(x, y);
    g.bob[static_cast<std::size_t>(y)] = eb * base.bob[static_cast<std::size_t>(y)] + (1 - ea) * eb * s;
    if (d.noclick.bob_zero(y)) g.offset += (1 - eb) * base.bob[static_cast<std::size_t>(y)];
  }
  for (int x = 0; x < sc.ma; ++x) {
    for (int y = 0; y < sc.mb; ++y) {
      g.corr[static_cast<std::size_t>(x * sc.mb + y)] = ea * eb * base.c(x, y);
      if (d.noclick.alice_zero(x) && d.noclick.bob_zero(y)) g.offset += (1 - ea) * (1 - eb) * base.c(x, y);
    }
  }
  return g;
}

namespace {

struct Hit {
  double value;
  QubitModel model;
  DeterministicStrategy noclick;
};

// Searches no-click assignments (previous winner first) for a violation at
// the given efficiencies. Assignments are processed in batches; a batch is
// always finished completely so the winner does not depend on scheduling.
std::optional<Hit> find_violation(const BellFunctional& f, double theta, double ea, double eb, const EtaOptions& opts,
                                  const std::optional<Hit>& previous) {
  const auto& sc = f.scenario;
  const std::uint32_t na = ea < 1.0 ? (1u << sc.ma) : 1u;
  const std::uint32_t nb = eb < 1.0 ? (1u << sc.mb) : 1u;
  std::vector<DeterministicStrategy> order;
  if (previous) order.push_back(previous->noclick);
  for (std::uint32_t a = 0; a < na; ++a)
    for (std::uint32_t b = 0; b < nb; ++b) {
      const DeterministicStrategy s{a, b};
      if (!(previous && previous->noclick == s)) order.push_back(s);
    }

  const Eigen::Matrix4d state = schmidt_correlations(theta);
  const double bound = to_double(f.bound);
  SeesawOptions so = opts.seesaw;
  so.theta = theta;
  so.exec = Exec::serial;

  const auto batch = static_cast<std::size_t>(std::max(opts.batch, 1));
  for (std::size_t start = 0; start < order.size(); start += batch) {
    const std::size_t end = std::min(order.size(), start + batch);
    std::vector<SeesawRun> runs(end - start);
    auto one = [&](std::size_t i) {
      const DeterministicStrategy s = order[start + i];
      const RealFunctional g = detection_functional(f, DetectionModel{ea, eb, s});
      std::vector<QubitModel> warm;
      if (previous && previous->noclick == s) warm.push_back(previous->model);
      runs[i] = seesaw_best(g, state, so, warm);
    };
    const auto n = static_cast<std::int64_t>(runs.size());
    if (opts.seesaw.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
    } else {
      for (std::int64_t i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
    }
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (runs[i].value <= bound + opts.margin) continue;
      if (!best || runs[i].value > runs[*best].value) best = i;
    }
    if (best) {
      QubitModel m = runs[*best].model;
      m.theta = theta;
      return Hit{runs[*best].value, m, order[start + *best]};
    }
  }
  return std::nullopt;
}

std::optional<EtaResult> bisect_eta(const BellFunctional& f, double theta, bool symmetric, const EtaOptions& opts) {
  if (!(theta > 0.0) || theta > M_PI / 4 + 1e-12) throw std::invalid_argument("efficiency threshold needs theta in (0, pi/4]");
  auto check = [&](double eta, const std::optional<Hit>& prev) {
    return find_violation(f, theta, symmetric ? eta : 1.0, eta, opts, prev);
  };
  std::optional<Hit> hit = check(1.0, std::nullopt);
  if (!hit) return std::nullopt;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > opts.eta_tol) {
    const double mid = 0.5 * (lo + hi);
    if (auto h = check(mid, hit)) {
      hi = mid;
      hit = std::move(h);
    } else {
      lo = mid;
    }
  }
  return EtaResult{hi, hit->model, hit->noclick};
}

} // namespace

std::optional<EtaResult> eta_threshold_symmetric(const BellFunctional& f, double theta, const EtaOptions& opts) {
  return bisect_eta(f, theta, true, opts);
}

std::optional<EtaResult> eta_threshold_asymmetric(const BellFunctional& f, double theta, const EtaOptions& opts) {
  return bisect_eta(f, theta, false, opts);
}

std::vector<double> default_sweep_grid() { return {0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.01, 0.005}; }

std::vector<SweepPoint> eta_asymmetric_sweep(const BellFunctional& f, const std::vector<double>& theta_over_pi,
                                             const EtaOptions& opts) {
  std::vector<SweepPoint> out;
  for (double t : theta_over_pi) {
    const auto r = eta_threshold_asymmetric(f, t * M_PI, opts);
    out.push_back({t, r ? std::optional<double>(r->eta) : std::nullopt});
  }
  return out;
}

} // namespace bell
