#include "wavescope/three_sphere.hpp"

#include <algorithm>
#include <cmath>

namespace wavescope {

void ThreeSphereParams::validate() const {
  if (!(r1 > 0.0 && r1 <= r2 && r2 < r3)) {
    fail("DegenerateRadii", "need 0 < r1 <= r2 < r3");
  }
  if (!(delta > 0.0 && delta <= (r3 - r2) / (2.0 * r3) + 1e-15)) {
    fail("DeltaOutOfRange", "need 0 < delta <= (r3 - r2)/(2 r3)");
  }
  if (beta < 1.0) fail("DegenerateRadii", "beta must be >= 1");
}

ThreeSphereConstants three_sphere_exponent(const ThreeSphereParams& p) {
  p.validate();
  const double b = p.beta;
  const double t2 = std::pow(p.r2, -b);
  const double t3 = std::pow((1.0 - p.delta) * p.r3, -b);
  const double t1 = std::pow((1.0 - 2.0 * p.delta) * p.r1, -b);
  const double den = t1 - t3;
  if (den <= 0.0) fail("DegenerateRadii", "exponent denominator not positive");
  ThreeSphereConstants c;
  c.theta0 = (t2 - t3) / den;
  c.C0 = p.C_carleman *
         std::exp(p.C_carleman * (std::pow(p.r2 / p.r3, -b) -
                                  std::pow(1.0 - p.delta, -b))) /
         std::pow(p.delta, 4);
  return c;
}

size_t BallSampledField::size() const {
  size_t s = 1;
  for (int d = 0; d < dim; ++d) s *= n;
  return s;
}

namespace {

double ball_integral(const std::vector<double>& v, int dim, int n, double r3,
                     double r) {
  if (v.empty()) return 0.0;
  const double h = 2.0 * r3 / (n - 1);
  const double rr = r * r;
  double acc = 0.0;
  if (dim == 2) {
    for (int j = 0; j < n; ++j) {
      const double y = -r3 + j * h;
      for (int i = 0; i < n; ++i) {
        const double x = -r3 + i * h;
        if (x * x + y * y <= rr) {
          const double w = v[static_cast<size_t>(j) * n + i];
          acc += w * w;
        }
      }
    }
    return acc * h * h;
  }
  for (int k = 0; k < n; ++k) {
    const double z = -r3 + k * h;
    for (int j = 0; j < n; ++j) {
      const double y = -r3 + j * h;
      for (int i = 0; i < n; ++i) {
        const double x = -r3 + i * h;
        if (x * x + y * y + z * z <= rr) {
          const double w = v[(static_cast<size_t>(k) * n + j) * n + i];
          acc += w * w;
        }
      }
    }
  }
  return acc * h * h * h;
}

}  // namespace

double BallSampledField::ball_integral_u2(double r) const {
  return ball_integral(u, dim, n, r3, r);
}

double BallSampledField::ball_integral_f2(double r) const {
  return ball_integral(f, dim, n, r3, r);
}

VerificationRecord verify_three_sphere(const BallSampledField& field,
                                       const ThreeSphereParams& p,
                                       double residual_tol,
                                       double cap_override) {
  const auto c = three_sphere_exponent(p);

  // Discrete solution check: Laplacian (identity coefficients) against the
  // supplied source on the interior of the middle ball region. Fields that
  // are not solutions of the elliptic equation are rejected, never scored.
  // The five-point stencil is not exact above degree three, so the threshold
  // is relative to the field scale and leaves room for the h^2 truncation of
  // genuine solutions.
  if (field.dim == 2) {
    const int n = field.n;
    const double h = field.h();
    double worst = 0.0, scale = 0.0;
    for (int j = 1; j < n - 1; ++j) {
      const double y = -field.r3 + j * h;
      for (int i = 1; i < n - 1; ++i) {
        const double x = -field.r3 + i * h;
        if (x * x + y * y > field.r3 * field.r3 * 0.96) continue;
        const size_t id = static_cast<size_t>(j) * n + i;
        const double lap = (field.u[id + 1] + field.u[id - 1] + field.u[id + n] +
                            field.u[id - n] - 4.0 * field.u[id]) /
                           (h * h);
        const double src = field.f.empty() ? 0.0 : field.f[id];
        worst = std::max(worst, std::abs(lap - src));
        scale = std::max(scale, std::abs(field.u[id]) / (field.r3 * field.r3));
      }
    }
    if (worst > residual_tol * std::max(1.0, scale)) {
      fail("NotASolution", "field does not satisfy the elliptic equation "
                           "(residual " + std::to_string(worst) + ")");
    }
  }

  VerificationRecord rec;
  rec.dim = field.dim;
  rec.r1 = p.r1;
  rec.r2 = p.r2;
  rec.r3 = p.r3;
  rec.delta = p.delta;
  rec.beta = p.beta;
  rec.theta0 = c.theta0;
  const double fterm = field.r3 * field.r3 * field.ball_integral_f2(p.r3);
  rec.lhs = field.ball_integral_u2(p.r2);
  rec.bracket_small = field.ball_integral_u2(p.r1) + fterm;
  rec.bracket_large = field.ball_integral_u2(p.r3) + fterm;
  const double rhs_base = std::pow(rec.bracket_small, c.theta0) *
                          std::pow(rec.bracket_large, 1.0 - c.theta0);
  rec.implied_C0 = rhs_base > 0.0 ? rec.lhs / rhs_base : 0.0;
  rec.cap = cap_override > 0.0 ? cap_override : c.C0;
  rec.pass = rec.implied_C0 <= rec.cap;
  return rec;
}

BallSampledField harmonic_polynomial_field(const std::vector<double>& a,
                                           const std::vector<double>& b,
                                           int grid_n, double r3) {
  BallSampledField field;
  field.dim = 2;
  field.n = grid_n;
  field.r3 = r3;
  field.u.assign(static_cast<size_t>(grid_n) * grid_n, 0.0);
  const double h = field.h();
  const int kmax = static_cast<int>(std::max(a.size(), b.size()));
  for (int j = 0; j < grid_n; ++j) {
    const double y = -r3 + j * h;
    for (int i = 0; i < grid_n; ++i) {
      const double x = -r3 + i * h;
      // Running powers of z = x + iy.
      double re = 1.0, im = 0.0;
      double val = 0.0;
      for (int k = 0; k < kmax; ++k) {
        if (k < static_cast<int>(a.size())) val += a[k] * re;
        if (k < static_cast<int>(b.size())) val += b[k] * im;
        const double re2 = re * x - im * y;
        im = re * y + im * x;
        re = re2;
      }
      field.u[static_cast<size_t>(j) * grid_n + i] = val;
    }
  }
  return field;
}

}  // namespace wavescope
