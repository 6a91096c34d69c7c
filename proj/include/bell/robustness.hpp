#pragma once

#include <optional>
#include <vector>

#include "bell/functional.hpp"
#include "bell/qubit.hpp"

namespace bell {

// ---- white noise --------------------------------------------------------

struct NoiseResult {
  double w_threshold = 1.0; // smallest visibility that still violates
  double theta = 0.0;
  QubitModel model;
};

/// I on the maximally mixed state with rank-one projective measurements.
Rational noise_floor(const BellFunctional& f);

/// Critical visibility of  w|psi(theta)><psi(theta)| + (1-w) I/4.
///
/// Projective measurements only: closed form (L - N) / (Q(theta) - N).
/// With opts.allow_degenerate the noise term depends on the measurements,
/// so the threshold is bisected instead (tolerance `w_tol`).
std::optional<NoiseResult> noise_threshold(const BellFunctional& f, double theta, const SeesawOptions& opts,
                                           double w_tol = 1e-7);

// ---- detection efficiency -----------------------------------------------

struct DetectionModel {
  double eta_a = 1.0;
  double eta_b = 1.0;
  DeterministicStrategy noclick; // outputs used when a detector fails
};

Behavior detected_behavior(const Behavior& p, const DetectionModel& d);

/// Coefficients g with g(p) == f(detected_behavior(p, d)) for every p.
RealFunctional detection_functional(const BellFunctional& f, const DetectionModel& d);

struct EtaOptions {
  SeesawOptions seesaw;
  double eta_tol = 1e-5;
  double margin = 1e-9; // a point violates when I > L + margin
  int batch = 16;       // no-click assignments tried between early-exit checks
};

struct EtaResult {
  double eta = 1.0; // eta for the symmetric case, eta_B for the asymmetric one
  QubitModel model;
  DeterministicStrategy noclick;
};

/// Smallest eta_A = eta_B admitting a violation at Schmidt angle theta.
std::optional<EtaResult> eta_threshold_symmetric(const BellFunctional& f, double theta, const EtaOptions& opts = {});

/// Smallest eta_B with eta_A = 1.
std::optional<EtaResult> eta_threshold_asymmetric(const BellFunctional& f, double theta,
                                                  const EtaOptions& opts = {});

struct SweepPoint {
  double theta_over_pi;
  std::optional<double> eta_b;
};

/// theta/pi = 0.25, 0.125, ..., 0.015625, then 0.01 and 0.005.
std::vector<double> default_sweep_grid();

std::vector<SweepPoint> eta_asymmetric_sweep(const BellFunctional& f, const std::vector<double>& theta_over_pi,
                                             const EtaOptions& opts = {});

} // namespace bell
