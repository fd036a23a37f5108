#pragma once

#include <string>
#include <vector>

#include "wavescope/schedules.hpp"
#include "wavescope/wave.hpp"

namespace wavescope {

/// One perturbation outcome of the end-to-end experiment.
struct StabilityRecord {
  int perturbation_id = 0;
  double amplitude = 0.0;
  double epsilon = 0.0;
  double d_hausdorff = 0.0;
  double d_modified = 0.0;
  double T_used = 0.0;
  double mu_used = 0.0;
  bool mu_capped = false;
  double H_T = 0.0;
  double H_t1 = 0.0;
  double sigma_eps = 0.0;
  double T_eps = 0.0;       // schedule horizon (typically astronomically large)
  double omega = 0.0;
  double omega1 = 0.0;
  double K0 = 0.0;
  double F_script = 0.0;
  std::string error;        // nonempty when this rung failed
};

/// Inputs of the experiment. The perturbation family applies a downward bump
/// of the given amplitude to the inaccessible bottom graph, preserving the
/// accessible portion exactly; bump center and width are drawn once from the
/// seed so every rung shares the same shape.
struct StabilityConfig {
  double length = 2.0;
  double height = 1.0;
  double rho0 = 0.25;
  double E = 2.0;
  int grid_nx = 97;
  int grid_ny = 49;
  double c_cfl = 0.5;
  double T = 2.5;
  double t0 = 1.0;
  double t1 = 0.25;
  int rungs = 8;
  double amp_min_frac = 1e-3;  // amplitude ladder in units of rho0
  double amp_max_frac = 1e-1;
  unsigned long long seed = 1;
  int threads = 1;
  // Calibration block.
  double C_F = 2.0;
  double C_K = 1.0;
  double vartheta2 = 0.5;
  double sigma_bar = 0.5;
  double lambda = 1.0;
  double mu_cap = 1e6;
};

std::vector<StabilityRecord> run_stability_experiment(const StabilityConfig& cfg);

/// Least-squares fits of the modulus of continuity against the mismatch:
/// the logarithmic law d = a rho0 |log eps|^{-b} and the competing power law
/// d = a' eps^{b'}; residuals are RMS in the respective log coordinates.
struct ModulusFit {
  double a = 0.0;
  double b = 0.0;
  double residual_log = 0.0;
  double a_pow = 0.0;
  double b_pow = 0.0;
  double residual_pow = 0.0;
  double residual_ratio = 0.0;  // log-law residual / power-law residual
  int n_used = 0;
};

/// Requires at least 5 records with eps in (0, e^-1) and d_H > 0; throws
/// InsufficientData otherwise.
ModulusFit fit_log_modulus(const std::vector<StabilityRecord>& records,
                           double rho0);

/// CSV export with a footer block carrying the fit; the byte stream is a pure
/// function of the records and the fit.
std::string stability_csv(const std::vector<StabilityRecord>& records,
                          const ModulusFit* fit);

}  // namespace wavescope
