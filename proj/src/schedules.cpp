#include "wavescope/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavescope {

ScheduleValue schedule_times(double sigma, double t0, double rho0,
                             double vartheta2, const DataNorm& H, int dim) {
  if (!(sigma > 0.0)) fail("EpsilonTooLarge", "sigma must be positive");
  if (!(vartheta2 > 0.0 && vartheta2 <= 1.0)) {
    fail("EpsilonTooLarge", "vartheta2 must lie in (0,1]");
  }
  ScheduleValue v;
  const double expo = std::pow(sigma, -static_cast<double>(dim + 1));
  const double logT = std::log(std::sqrt(10.0) * rho0) -
                      expo * std::log(vartheta2);
  if (logT > 700.0) {
    v.overflow = true;
    v.T_sigma = std::numeric_limits<double>::infinity();
    v.Phi = std::numeric_limits<double>::infinity();
    return v;
  }
  v.T_sigma = std::max(2.0 * t0, std::exp(logT));
  const double ratio = v.T_sigma / rho0;
  v.Phi = std::pow(sigma, -(dim + 1) / 4.0) * std::pow(ratio, 5.5) *
          std::pow(H(v.T_sigma) + 1.0, 2);
  return v;
}

double epsilon_bar(double sigma_bar, double t0, double rho0, double vartheta2,
                   const DataNorm& H, int dim) {
  const auto v = schedule_times(sigma_bar, t0, rho0, vartheta2, H, dim);
  if (v.overflow) return 0.0;
  const double p8 = std::pow(v.Phi, 8);
  if (!std::isfinite(p8) || p8 > 700.0) return 0.0;  // exp(-Phi^8) underflows
  return std::min(std::exp(-5.0), std::exp(-p8));
}

SigmaOfEpsilon sigma_of_epsilon(double eps, double sigma_bar, double t0,
                                double rho0, double vartheta2,
                                const DataNorm& H, int dim) {
  if (!(eps > 0.0 && eps <= std::exp(-5.0))) {
    fail("EpsilonTooLarge", "need 0 < eps <= e^-5");
  }
  const double target = std::pow(std::abs(std::log(eps)), 1.0 / 8.0);
  const auto at_bar = schedule_times(sigma_bar, t0, rho0, vartheta2, H, dim);
  SigmaOfEpsilon out;
  if (at_bar.overflow || at_bar.Phi > target) {
    out.sigma = sigma_bar;
    out.clamped = true;
    out.T_eps = at_bar.T_sigma;
  } else {
    // Phi is decreasing, so the infimum is found by bisection on sigma.
    double lo = sigma_bar * 1e-12, hi = sigma_bar;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const auto v = schedule_times(mid, t0, rho0, vartheta2, H, dim);
      if (!v.overflow && v.Phi <= target) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.sigma = hi;
    out.T_eps = schedule_times(out.sigma, t0, rho0, vartheta2, H, dim).T_sigma;
  }
  out.omega = std::pow(t0 / rho0, 6) * std::pow(H(t0), 2) *
                  std::pow(out.sigma, 0.25) +
              std::pow(std::abs(std::log(eps)), -0.125);
  return out;
}

double TheoreticalModulus::predicted(double eta) const {
  const double scale = t0_bar / rho0 * H_t0bar;
  return C_K * rho0 * std::pow(eta / scale, 1.0 / K0);
}

double f_script(double C_F, double t0_bar, double rho0, double H_ratio) {
  const double ratio = C_F * std::pow(t0_bar / rho0, 3) * H_ratio;
  return ratio * ratio;
}

TheoreticalModulus theoretical_modulus(double t0, double t1, double rho0,
                                       const DataNorm& H, double C_F,
                                       double C_K, double lambda) {
  const double t_star = std::max(C_F * rho0, 2.0 * t1);
  if (t0 < t_star + lambda * rho0 - 1e-12) {
    fail("TimeTooShort", "need t0 >= t_star + lambda rho0");
  }
  TheoreticalModulus tm;
  tm.rho0 = rho0;
  tm.C_F = C_F;
  tm.C_K = C_K;
  tm.t0_bar = t0 - lambda * rho0;
  tm.H_t0bar = H(tm.t0_bar);
  tm.F_script =
      f_script(C_F, tm.t0_bar, rho0, tm.H_t0bar / std::max(H(t1), 1e-300));
  const double ex = C_K * tm.F_script;
  tm.K0 = ex > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(ex);
  return tm;
}

double omega_one(double omega, const TheoreticalModulus& tm, double C) {
  const double scale = tm.t0_bar / tm.rho0 * tm.H_t0bar;
  if (!(tm.K0 > 0.0) || std::isinf(tm.K0)) return C;  // flat modulus
  return C * std::pow(omega / scale, 1.0 / tm.K0);
}

}  // namespace wavescope
