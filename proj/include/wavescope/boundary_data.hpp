#pragma once

#include <functional>
#include <vector>

#include "wavescope/geometry.hpp"

namespace wavescope {

/// Smooth time ramp with analytic derivatives of every order used by the
/// data-norm machinery. Supported shapes:
///   power:       g(t) = (t/t_scale)^p             (p >= 7 keeps the t=0
///                                                  compatibility conditions)
///   power_sine:  g(t) = (t/t_scale)^p sin(omega t)
struct TimeProfile {
  enum class Kind { power, power_sine };
  Kind kind = Kind::power;
  int p = 7;
  double t_scale = 1.0;
  double omega = 0.0;

  double value(double t) const { return derivative(0, t); }
  /// j-th time derivative, exact.
  double derivative(int j, double t) const;
  /// sup over [0, t] of |g^{(j)}|, sampled densely (the power ramp is
  /// monotone so the sup sits at t).
  double sup_derivative(int j, double t, int samples = 512) const;
};

/// Dirichlet boundary data psi(x, t) = spatial(x) * ramp(t), stored through a
/// smooth ambient extension of the spatial factor so the solver can impose
/// the trace on cut cells by interpolation. The spatial factor must vanish on
/// the inaccessible portion.
struct BoundaryData {
  std::function<double(Vec2)> spatial;
  TimeProfile ramp;
  double t1 = 1.0;  // reference time for the data-size ratio
  /// Optional non-separable override (manufactured solutions impose the
  /// trace of a known space-time field). When set it is the authority for
  /// eval(); the separable pieces still drive the data-norm machinery.
  std::function<double(Vec2, double)> eval_hook;

  double eval(Vec2 p, double t) const {
    return eval_hook ? eval_hook(p, t) : spatial(p) * ramp.value(t);
  }
  double eval_dt(int j, Vec2 p, double t) const {
    return spatial(p) * ramp.derivative(j, t);
  }
};

/// Zero data everywhere.
BoundaryData zero_boundary_data();

/// Bump in the x coordinate centered on the top wall of a channel domain,
/// faded to zero below `y_fade` so the inaccessible bottom portion sees
/// exactly zero data.
BoundaryData channel_top_bump(double x_center, double x_width, double y_fade,
                              double y_top, TimeProfile ramp, double t1);

/// C^{1,1}(boundary) norm of the spatial factor restricted to the boundary,
/// measured chart by chart with the dimensionally weighted finite differences
///   sup |f| + rho0 sup |f'| + rho0^2 sup |f''|.
double boundary_c11_norm(const Domain& domain,
                         const std::function<double(Vec2)>& f, double ds = 0.0);

/// Boundary-data size
///   H(t) = sum_{j=0}^{2m+4} rho0^j sup_{xi in [0,t]}
///            || d^j/dxi^j psi(., xi) ||_{C^{1,1}(boundary)}
/// with m = floor((n+2)/4). For separable data the norm factorizes into the
/// spatial C^{1,1} norm times the ramp derivative sups.
double boundary_data_norm(const Domain& domain, const BoundaryData& data,
                          double t);

/// H(t1) / sup |psi| on the accessible part up to t1. Throws FlatData when
/// the data vanishes identically.
double data_size_ratio(const Domain& domain, const BoundaryData& data);

/// Checks the t=0 compatibility conditions (time derivatives up to order
/// 2m+4 vanish) by divided differences on a refined grid near zero; throws
/// CompatibilityViolation on failure.
void check_compatibility(const BoundaryData& data, double tol = 1e-8);

/// Divided-difference estimate of the j-th derivative of a sampled signal;
/// throws InsufficientSmoothness when the estimates blow up under grid
/// refinement. Used for non-separable data ingested from samples.
double divided_difference_derivative(const std::vector<double>& t,
                                     const std::vector<double>& g, int j,
                                     double at);

}  // namespace wavescope
