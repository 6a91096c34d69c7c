#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bell/functional.hpp"
#include "bell/parallel.hpp"

namespace bell {

/// Two-outcome qubit measurement, described by its outcome-"0" effect.
struct Measurement {
  enum class Kind {
    projector,   // (1 + a.sigma)/2 with unit Bloch vector a
    always_zero, // identity effect: outcome 0 with certainty
    always_one,  // zero effect: outcome 1 with certainty
  };
  Kind kind = Kind::projector;
  std::array<double, 3> bloch{0.0, 0.0, 1.0};

  static Measurement projector(std::array<double, 3> v); // normalizes v
  static Measurement identity() { return {Kind::always_zero, {0.0, 0.0, 0.0}}; }
  static Measurement zero() { return {Kind::always_one, {0.0, 0.0, 0.0}}; }

  /// Pauli coefficients (e0, ex, ey, ez) of the effect, E = e0 I + e.sigma.
  Eigen::Vector4d effect() const;
};

/// Schmidt state cos(theta)|00> + sin(theta)|11> with local measurements.
struct QubitModel {
  double theta = 0.0;
  std::vector<Measurement> alice;
  std::vector<Measurement> bob;

  Scenario scenario() const { return {static_cast<int>(alice.size()), static_cast<int>(bob.size())}; }
};

Behavior model_behavior(const QubitModel& m);

/// Pauli correlation matrix R(mu,nu) = <sigma_mu (x) sigma_nu>, sigma_0 = I.
Eigen::Matrix4d schmidt_correlations(double theta);
/// w |psi(theta)><psi(theta)| + (1 - w) I/4.
Eigen::Matrix4d noisy_correlations(double theta, double w);

/// Behavior of arbitrary measurements on a state given by its correlations.
Behavior behavior_on_state(const Eigen::Matrix4d& state, std::span<const Measurement> alice,
                           std::span<const Measurement> bob);

/// p(00|xy) for projective measurements with Bloch vectors in polar form,
/// and its partial derivatives.
struct JointGradient {
  double value;
  double d_theta;
  double d_alice_polar, d_alice_azimuth;
  double d_bob_polar, d_bob_azimuth;
};
JointGradient joint_probability_gradient(double theta, double alice_polar, double alice_azimuth, double bob_polar,
                                         double bob_azimuth);

/// Functional with real coefficients and a constant term; the see-saw
/// engine works on these so that detection and noise models can feed it
/// transformed coefficients.
struct RealFunctional {
  Scenario scenario;
  std::vector<double> alice, bob, corr;
  double offset = 0.0;

  static RealFunctional from(const BellFunctional& f);
  double c(int x, int y) const { return corr[static_cast<std::size_t>(x * scenario.mb + y)]; }
  double evaluate(const Behavior& p) const;
};

struct SeesawOptions {
  int restarts = 50;
  std::uint64_t seed = 0;
  std::optional<double> theta;   // fixed Schmidt angle; free when empty
  bool allow_degenerate = false; // identity / zero effects as alternatives
  double tol = 1e-10;
  int max_sweeps = 500;
  Exec exec = Exec::parallel;
};

struct QuantumResult {
  double value = 0.0;     // maximal I found (not I - L)
  double violation = 0.0; // value - bound
  double theta_max = 0.0;
  QubitModel model;
  int restarts_used = 0;
};

/// Output of a single see-saw descent.
struct SeesawRun {
  double value = 0.0;
  QubitModel model;
  int sweeps = 0;
  std::vector<double> trace; // objective after every block update
};

/// Runs one see-saw from `start`. With `fixed_state` set, only the
/// measurements move and start.theta is carried through unchanged.
SeesawRun seesaw_run(const RealFunctional& f, const std::optional<Eigen::Matrix4d>& fixed_state,
                     const QubitModel& start, bool allow_degenerate, double tol, int max_sweeps,
                     bool record_trace = false);

/// Random start: Bloch vectors uniform on the sphere, theta uniform on [0, pi/4].
QubitModel random_model(const Scenario& s, std::uint64_t seed, std::uint64_t restart);

/// Best of `opts.restarts` seeded runs plus any warm starts (tried first).
/// Ties go to the lowest restart index.
SeesawRun seesaw_best(const RealFunctional& f, const std::optional<Eigen::Matrix4d>& fixed_state,
                      const SeesawOptions& opts, std::span<const QubitModel> warm = {});

QuantumResult seesaw_maximize(const BellFunctional& f, const SeesawOptions& opts);

/// Maximal I at a fixed Schmidt angle.
double quantum_value_at(const BellFunctional& f, double theta, bool allow_degenerate, SeesawOptions opts = {});

} // namespace bell
