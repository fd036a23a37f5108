#include "wavescope/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavescope {

PropagationState propagate_smallness(int N, double alpha0, double theta_star,
                                     double C_step) {
  if (alpha0 < 0.0) fail("DegenerateRadii", "alpha0 must be nonnegative");
  if (!(theta_star > 0.0 && theta_star < 1.0)) {
    fail("DegenerateRadii", "theta must lie in (0,1)");
  }
  if (C_step < 1.0) fail("DegenerateRadii", "C must be >= 1");
  PropagationState st;
  st.theta_star = theta_star;
  st.C_step = C_step;
  st.N = N;
  st.alpha.resize(N + 1);
  st.alpha[0] = alpha0;
  for (int k = 0; k < N; ++k) {
    st.alpha[k + 1] = C_step * std::pow(st.alpha[k], theta_star);
  }
  const double thN = std::pow(theta_star, N);
  if (alpha0 == 0.0) {
    st.closed_form_exact = 0.0;
    st.closed_form_bound = 0.0;
  } else {
    st.closed_form_exact =
        std::pow(C_step, (1.0 - thN) / (1.0 - theta_star)) * std::pow(alpha0, thN);
    st.closed_form_bound =
        std::pow(C_step, 1.0 / (1.0 - theta_star)) * std::pow(alpha0, thN);
  }
  return st;
}

PropagationState propagate_smallness(const BallChain& chain, double alpha0,
                                     double theta_star, double C_step) {
  return propagate_smallness(std::max(0, chain.length() - 1), alpha0,
                             theta_star, C_step);
}

double sucp_bound(double rho, double r0, double rho0, double eps0, double H0,
                  double C_sucp) {
  if (!(r0 > 0.0 && r0 <= rho && rho <= rho0)) {
    fail("ThetaNonpositive", "need 0 < r0 <= rho <= rho0");
  }
  if (eps0 <= 0.0) fail("ThetaNonpositive", "eps0 must be positive");
  const double theta = std::log(rho0 / (C_sucp * rho)) / std::log(rho0 / r0);
  if (theta <= 0.0) {
    fail("ThetaNonpositive", "rho too large for the calibration constant");
  }
  const double num = C_sucp * std::pow(rho0 / rho, C_sucp) *
                     (H0 + std::exp(1.0) * eps0);
  const double logarg = (H0 + std::exp(1.0) * eps0) / eps0;
  return num / std::pow(theta * std::log(logarg), 1.0 / 6.0);
}

ConeDecaySchedule cone_decay_schedule(const BallChain& chain, double mu,
                                      double T, double rho0, double vartheta2,
                                      double beta1, int k_max) {
  (void)mu;
  if (chain.kind != BallChain::Kind::cone) {
    fail("ContractionViolated", "cone decay needs a cone chain");
  }
  const ConeParams& c = chain.cone;
  if (k_max <= 0) k_max = std::max(1, chain.length());

  ConeDecaySchedule sch;
  // Aperture-shrink parameter delta = q (R1 - rho1) / (2 R1) with q = 1/2;
  // the radii ratios reduce to the sines.
  const double q = 0.5;
  sch.delta = q * (c.sin_gamma - c.sin_gamma2) / (2.0 * c.sin_gamma);
  const double ratio2 = c.sin_gamma2 / c.sin_gamma;  // rho1 / R1
  const double ratio1 = c.sin_gamma1 / c.sin_gamma;  // r1 / R1
  const double t2 = std::pow(ratio2, -beta1);
  const double t3 = std::pow(1.0 - sch.delta, -beta1);
  const double t1 = std::pow((1.0 - 2.0 * sch.delta) * ratio1, -beta1);
  sch.theta_tilde0 = (t2 - t3) / (t1 - t3);
  sch.contraction = c.chi * c.chi / sch.theta_tilde0;
  if (!(sch.contraction < 1.0)) {
    fail("ContractionViolated",
         "chi^2 / theta_tilde0 = " + std::to_string(sch.contraction) +
             " >= 1; no geometric decay");
  }

  const double R1 = chain.large_radii.empty() ? c.l1 * c.sin_gamma
                                              : chain.large_radii.front();
  const double cc = sch.contraction;
  sch.A_sup = (1.0 / (c.chi * c.chi) - 1.0) * cc / (1.0 - cc);
  const int n = chain.dim;
  // The exponent (s h / 2)^{-n} routinely drives D below the double range at
  // desk scale; keep the logarithm exact and flag the overflowing horizon.
  sch.log_D = (1.0 + std::pow(c.s * c.h / 2.0, -static_cast<double>(n))) *
              std::log(vartheta2);
  sch.D = std::exp(sch.log_D);

  sch.A.resize(k_max);
  sch.A1.resize(k_max);
  sch.A2.resize(k_max);
  double a1_sup = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    const double Ak = (1.0 / (c.chi * c.chi) - 1.0) * cc *
                      (1.0 - std::pow(cc, k)) / (1.0 - cc);
    sch.A[k - 1] = Ak;
    sch.A1[k - 1] = 0.5 * (Ak + cc) * R1 * R1 + rho0 * rho0;
    a1_sup = std::max(a1_sup, sch.A1[k - 1]);
  }
  // Minimal horizon: A1 - T^2 D / 10 <= -T^2 D / 20  <=>  T^2 >= 20 A1 / D,
  // i.e. log T_min = (log(20 A1) - log D) / 2.
  const double log_tmin = 0.5 * (std::log(20.0 * a1_sup) - sch.log_D);
  if (log_tmin > 700.0) {
    sch.T_min = std::numeric_limits<double>::infinity();
    sch.horizon_overflow = true;
  } else {
    sch.T_min = std::exp(log_tmin);
  }
  const double Tuse = sch.horizon_overflow ? T : std::max(T, sch.T_min);
  for (int k = 0; k < k_max; ++k) {
    sch.A2[k] = sch.A1[k] - Tuse * Tuse * sch.D / 10.0;
  }
  return sch;
}

}  // namespace wavescope
