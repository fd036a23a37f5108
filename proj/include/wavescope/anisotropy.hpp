#pragma once

#include <array>
#include <functional>

#include "wavescope/geometry.hpp"

namespace wavescope {

/// Symmetric 2x2 coefficient matrix field A(x) with uniform ellipticity
///   lambda |xi|^2 <= A(x) xi . xi <= lambda^{-1} |xi|^2
/// and Lipschitz modulus |A(x)-A(y)| <= (Lambda/rho0) |x-y|.
struct AnisotropyField {
  std::function<std::array<double, 3>(Vec2)> entries;  // {a11, a12, a22}
  double lambda = 1.0;
  double Lambda_lip = 0.0;

  std::array<double, 3> at(Vec2 p) const { return entries(p); }

  static AnisotropyField identity();
  static AnisotropyField diagonal(double a11, double a22);
};

/// Samples the ellipticity bounds on a grid over `box` using the coordinate
/// basis plus `n_random` random directions; throws EllipticityViolation
/// when a sample breaks the two-sided bound.
void check_ellipticity(const AnisotropyField& a, const Box2& box, int n_grid,
                       int n_random, unsigned long long seed = 1);

/// Checks the scaled Lipschitz bound on adjacent grid samples; throws
/// LipschitzViolation on failure.
void check_lipschitz(const AnisotropyField& a, const Box2& box, int n_grid,
                     double rho0);

}  // namespace wavescope
