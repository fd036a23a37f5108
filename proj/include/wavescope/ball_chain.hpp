#pragma once

#include <vector>

#include "wavescope/geometry.hpp"

namespace wavescope {

/// Cone parameters of a cone chain. The cone is
///   { x : L_s |x'| <= x_n <= s L_s rho0 / 2 },
/// gamma = arctan(1/L_s) is the half-opening measured from the lateral
/// surface, and the radii schedules are driven by sin(gamma_1) = 1 - varsigma,
/// sin(gamma_2) = 1 - varsigma/4.
struct ConeParams {
  double s = 0.0;
  double L_s = 0.0;
  double varsigma = 0.0;
  double sin_gamma = 0.0;
  double sin_gamma1 = 0.0;
  double sin_gamma2 = 0.0;
  double chi = 0.0;     // contraction ratio of the length scale l_k
  double h = 0.0;       // clearance constant (sin g - sin g1)/(1 + sin g)
  double l1 = 0.0;      // first length scale
};

struct BallChain {
  enum class Kind { path, cone };
  Kind kind = Kind::path;
  int dim = 2;
  std::vector<std::vector<double>> centers;
  std::vector<double> small_radii;
  std::vector<double> mid_radii;
  std::vector<double> large_radii;
  ConeParams cone;  // meaningful for cone chains only

  int length() const { return static_cast<int>(centers.size()); }
};

/// Axis-aligned chain of balls nested inside the cone, with
///   l_k = chi^{k-1} l_1, centers w_k = l_k e_n,
///   R_k = l_k sin(gamma), rho_k = l_k sin(gamma_2), r_k = l_k sin(gamma_1).
/// Throws ConeAngleOrder when gamma_1 < gamma_2 < gamma fails (e.g. L_s too
/// large for the requested varsigma).
BallChain cone_ball_chain(double s, double L_s, double rho0, double varsigma,
                          int n_balls = 12, int dim = 2);

/// Slope such that arctan(1/L_s) has sine exactly 1 - varsigma/12, i.e. the
/// cone aperture matched to the varsigma schedule.
double matched_cone_slope(double varsigma);

/// Exact-arithmetic verification of the nesting
///   B_{r_{k+1}}(w_{k+1}) subset B_{rho_k}(w_k) subset B_{R_k}(w_k) subset cone
/// for k = 1..k_max, with all inputs interpreted as exact rationals
/// num/den. Returns true iff every containment holds exactly.
bool cone_nesting_exact(long long s_num, long long s_den, long long ls_num,
                        long long ls_den, long long rho0_num, long long rho0_den,
                        long long vs_num, long long vs_den, int k_max);

/// Chain of balls along a shortest grid path between two points of the
/// r-interior of the host region. Consecutive centers are exactly r/2 apart
/// (the last step may be shorter); ball radii are (r/4, 3r/4, r).
/// Throws NotConnected when start and end are separated at inset r.
BallChain path_ball_chain(const Domain& host, Vec2 start, Vec2 end, double r,
                          double grid_pitch = 0.0);

/// Packing-based chain length bound N <= c_n * M * sigma^{-n} with
/// sigma = r / rho0; c_n defaults to the disjoint-ball packing constant
/// 4^n / omega_n (omega_n = unit ball volume).
bool chain_length_within_bound(const BallChain& chain, double M, double rho0,
                               double r, double c_n = 0.0);

}  // namespace wavescope
