#pragma once

#include <functional>

#include "wavescope/errors.hpp"

namespace wavescope {

/// Monotone data-size function of time (precomputed or closed form).
using DataNorm = std::function<double(double)>;

/// Observation-time schedule and its decreasing companion:
///   T_sigma = max{ 2 t0, sqrt(10) rho0 vartheta2^{-sigma^{-(n+1)}} },
///   Phi(sigma) = sigma^{-(n+1)/4} (T_sigma/rho0)^{11/2} (H(T_sigma) + 1)^2.
/// Overflow of T_sigma for tiny sigma is reported through the flag, not
/// fatal: the schedule is astronomically large by design there.
struct ScheduleValue {
  double T_sigma = 0.0;
  double Phi = 0.0;
  bool overflow = false;
};

ScheduleValue schedule_times(double sigma, double t0, double rho0,
                             double vartheta2, const DataNorm& H, int dim = 2);

/// sigma(eps) = inf{ sigma in (0, sigma_bar] : Phi(sigma) <= |log eps|^{1/8} }
/// found by bisection on the monotone Phi; also T(eps) = T_{sigma(eps)} and
/// the moduli
///   omega(eps, t0) = (t0/rho0)^6 H(t0)^2 sigma(eps)^{1/4} + |log eps|^{-1/8},
///   omega1 = C (omega / (t0bar rho0^{-1} H(t0bar)))^{1/K0}.
struct SigmaOfEpsilon {
  double sigma = 0.0;
  double T_eps = 0.0;
  double omega = 0.0;
  /// The exact admissibility threshold exp(-Phi(sigma_bar)^8) underflows the
  /// double range for every realizable parameter set (Phi >= 10^{11/4}), so
  /// desk-scale eps never reaches the feasible branch. When the feasible set
  /// {Phi(sigma) <= |log eps|^{1/8}} is empty the infimum is reported at the
  /// right endpoint sigma_bar with this flag raised.
  bool clamped = false;
};

/// Throws EpsilonTooLarge when eps > e^-5 (the basic smallness assumption).
SigmaOfEpsilon sigma_of_epsilon(double eps, double sigma_bar, double t0,
                                double rho0, double vartheta2,
                                const DataNorm& H, int dim = 2);

double epsilon_bar(double sigma_bar, double t0, double rho0, double vartheta2,
                   const DataNorm& H, int dim = 2);

/// Theoretical modulus pieces from the lower-bound argument:
///   Fcal(t0bar) = (C_F (t0bar/rho0)^3 H(t0bar)/H(t1))^2,
///   K0 = exp(C_K Fcal),
///   predicted(eta) = C rho0 (eta / (t0bar rho0^{-1} H(t0bar)))^{1/K0}.
/// Requires t0 >= t_star + lambda rho0 with t_star = max{C_F rho0, 2 t1}.
struct TheoreticalModulus {
  double t0_bar = 0.0;
  double F_script = 0.0;
  double K0 = 1.0;
  double C_F = 2.0;
  double C_K = 1.0;
  double rho0 = 1.0;
  double H_t0bar = 0.0;
  double predicted(double eta) const;
};

TheoreticalModulus theoretical_modulus(double t0, double t1, double rho0,
                                       const DataNorm& H, double C_F,
                                       double C_K, double lambda = 1.0);

/// Bare lower-bound exponent formula (no admissibility checks):
///   Fcal = (C_F (t0bar/rho0)^3 H(t0bar)/H(t1))^2.
double f_script(double C_F, double t0_bar, double rho0, double H_ratio);

/// omega1(eps, t0) per the corollary combining the two steps.
double omega_one(double omega, const TheoreticalModulus& tm, double C = 1.0);

}  // namespace wavescope
