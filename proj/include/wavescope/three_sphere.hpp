#pragma once

#include <vector>

#include "wavescope/errors.hpp"

namespace wavescope {

/// Radii and calibration of the sharp three-sphere inequality. The exponent
/// degrades gracefully as r2 -> r3; delta must satisfy
/// 0 < delta <= (r3 - r2) / (2 r3).
struct ThreeSphereParams {
  double r1 = 0.25;
  double r2 = 0.5;
  double r3 = 1.0;
  double delta = 0.2;
  double beta = 4.0;         // >= beta1; beta1 is a calibration constant
  double C_carleman = 1.0;   // scale inside the constant C0

  void validate() const;
};

/// Interpolation exponent and multiplicative constant:
///   theta0 = (r2^-b - ((1-d) r3)^-b) / (((1-2d) r1)^-b - ((1-d) r3)^-b),
///   C0     = exp(C [ (r2/r3)^-b - (1-d)^-b ]) / d^4.
struct ThreeSphereConstants {
  double theta0 = 0.0;
  double C0 = 0.0;
};

ThreeSphereConstants three_sphere_exponent(const ThreeSphereParams& p);

/// A scalar field sampled on a uniform n-dimensional grid covering the cube
/// [-r3, r3]^n (dim = 2 or 3); integration against concentric balls uses
/// midpoint quadrature over cells whose center lies in the ball.
struct BallSampledField {
  int dim = 2;
  int n = 0;               // points per axis
  double r3 = 1.0;
  std::vector<double> u;   // n^dim values
  std::vector<double> f;   // source, same layout (may be empty for zero)

  double h() const { return 2.0 * r3 / (n - 1); }
  size_t size() const;
  double ball_integral_u2(double r) const;
  double ball_integral_f2(double r) const;
};

/// One corpus verification: the inequality
///   int_{B_r2} u^2 <= C0 (int_{B_r1} u^2 + r3^2 int f^2)^theta0
///                        (int_{B_r3} u^2 + r3^2 int f^2)^{1-theta0}
/// is evaluated on the sampled field; `implied_C0` is the smallest constant
/// making it hold, and `pass` compares it against the cap (default: the
/// theorem constant C0 from the calibration). Inputs that fail the discrete
/// elliptic equation div(A grad u) = f beyond `residual_tol` are rejected
/// with NotASolution.
struct VerificationRecord {
  int dim = 2;
  double r1, r2, r3, delta, beta;
  double theta0 = 0.0;
  double lhs = 0.0;
  double bracket_small = 0.0;
  double bracket_large = 0.0;
  double implied_C0 = 0.0;
  double cap = 0.0;
  bool pass = false;
};

VerificationRecord verify_three_sphere(const BallSampledField& field,
                                       const ThreeSphereParams& p,
                                       double residual_tol = 0.02,
                                       double cap_override = 0.0);

/// Evaluates a real harmonic polynomial sum_k (a_k Re z^k + b_k Im z^k) on
/// the sampling cube; used by the corpus generator (its Laplacian vanishes
/// identically, coefficient arithmetic is exact).
BallSampledField harmonic_polynomial_field(const std::vector<double>& a,
                                           const std::vector<double>& b,
                                           int grid_n, double r3);

}  // namespace wavescope
