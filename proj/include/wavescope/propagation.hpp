#pragma once

#include <vector>

#include "wavescope/ball_chain.hpp"

namespace wavescope {

/// Result of iterating the smallness recursion alpha_{k+1} = C alpha_k^theta
/// along a chain of N balls. `closed_form_exact` is the exact value of the
/// equality recursion, C^{(1-theta^N)/(1-theta)} alpha_0^{theta^N};
/// `closed_form_bound` is the dominating envelope C^{1/(1-theta)}
/// alpha_0^{theta^N}.
struct PropagationState {
  std::vector<double> alpha;
  double theta_star = 0.0;
  double C_step = 1.0;
  int N = 0;
  double closed_form_exact = 0.0;
  double closed_form_bound = 0.0;
};

PropagationState propagate_smallness(const BallChain& chain, double alpha0,
                                     double theta_star, double C_step);
PropagationState propagate_smallness(int N, double alpha0, double theta_star,
                                     double C_step);

/// Quantitative vanishing-rate bound near a point or boundary:
///   bound = C (rho0/rho)^C (H0 + e eps0) /
///           (theta log((H0 + e eps0)/eps0))^{1/6},
///   theta = log(rho0/(C rho)) / log(rho0/r0).
/// C is a calibration constant; ThetaNonpositive is thrown when rho is too
/// large for the given C.
double sucp_bound(double rho, double r0, double rho0, double eps0, double H0,
                  double C_sucp);

/// Geometric decay diagnostics of a cone chain:
///   contraction c = chi^2 / thetatilde0 (must be < 1),
///   A_k = (chi^-2 - 1) c (1 - c^k)/(1 - c),
///   A1_k = (A_k + c) R1^2 / 2 + rho0^2,
///   A2_k = A1_k - T^2 D / 10 with D = vartheta2^{1 + (s h / 2)^{-n}},
/// and the minimal horizon T such that A2_k <= -T^2 D / 20 for every k.
struct ConeDecaySchedule {
  double theta_tilde0 = 0.0;
  double contraction = 0.0;   // chi^2 / theta_tilde0
  double delta = 0.0;         // aperture-shrink parameter used in theta_tilde0
  double D = 0.0;             // vartheta2^{1 + (s h/2)^{-n}}
  double log_D = 0.0;         // exact even when D underflows
  std::vector<double> A;      // A_k
  std::vector<double> A1;     // A^{(1)}_{s,k}
  std::vector<double> A2;     // A^{(2)}_{s,k} at the supplied horizon
  double A_sup = 0.0;         // geometric-series bound on A_k
  double T_min = 0.0;         // infinity when the exponent underflows
  bool horizon_overflow = false;
};

ConeDecaySchedule cone_decay_schedule(const BallChain& chain, double mu,
                                      double T, double rho0, double vartheta2,
                                      double beta1 = 4.0, int k_max = 0);

}  // namespace wavescope
