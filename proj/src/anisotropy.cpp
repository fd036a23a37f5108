#include "wavescope/anisotropy.hpp"

#include <cmath>

namespace wavescope {

AnisotropyField AnisotropyField::identity() {
  AnisotropyField f;
  f.entries = [](Vec2) { return std::array<double, 3>{1.0, 0.0, 1.0}; };
  f.lambda = 1.0;
  f.Lambda_lip = 0.0;
  return f;
}

AnisotropyField AnisotropyField::diagonal(double a11, double a22) {
  AnisotropyField f;
  f.entries = [a11, a22](Vec2) { return std::array<double, 3>{a11, 0.0, a22}; };
  const double lo = std::min(a11, a22);
  const double hi = std::max(a11, a22);
  f.lambda = std::min(lo, 1.0 / hi);
  f.Lambda_lip = 0.0;
  return f;
}

namespace {
// Cheap deterministic uniform in [0,1): xorshift on the seed stream.
struct Rng {
  unsigned long long state;
  double next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  }
};
}  // namespace

void check_ellipticity(const AnisotropyField& a, const Box2& box, int n_grid,
                       int n_random, unsigned long long seed) {
  Rng rng{seed * 2654435769ULL + 1};
  std::vector<Vec2> dirs = {{1.0, 0.0}, {0.0, 1.0}};
  for (int k = 0; k < n_random; ++k) {
    const double th = rng.next() * 2.0 * 3.14159265358979323846;
    dirs.push_back({std::cos(th), std::sin(th)});
  }
  const double lam = a.lambda;
  for (int j = 0; j < n_grid; ++j) {
    for (int i = 0; i < n_grid; ++i) {
      Vec2 p{box.x0 + (box.x1 - box.x0) * i / (n_grid - 1),
             box.y0 + (box.y1 - box.y0) * j / (n_grid - 1)};
      const auto m = a.at(p);
      for (const auto& xi : dirs) {
        const double q = m[0] * xi.x * xi.x + 2.0 * m[1] * xi.x * xi.y +
                         m[2] * xi.y * xi.y;
        const double n2 = dot(xi, xi);
        if (q < lam * n2 * (1.0 - 1e-12) || q > n2 / lam * (1.0 + 1e-12)) {
          fail("EllipticityViolation",
               "quadratic form out of [lambda, 1/lambda] at a sample");
        }
      }
    }
  }
}

void check_lipschitz(const AnisotropyField& a, const Box2& box, int n_grid,
                     double rho0) {
  const double hx = (box.x1 - box.x0) / (n_grid - 1);
  const double hy = (box.y1 - box.y0) / (n_grid - 1);
  auto entry_gap = [&](Vec2 p, Vec2 q) {
    const auto mp = a.at(p), mq = a.at(q);
    double g = 0.0;
    for (int k = 0; k < 3; ++k) g = std::max(g, std::abs(mp[k] - mq[k]));
    return g;
  };
  const double bound = a.Lambda_lip / rho0;
  for (int j = 0; j < n_grid; ++j) {
    for (int i = 0; i < n_grid; ++i) {
      Vec2 p{box.x0 + hx * i, box.y0 + hy * j};
      if (i + 1 < n_grid) {
        Vec2 q{p.x + hx, p.y};
        if (entry_gap(p, q) > bound * hx * (1.0 + 1e-9) + 1e-15) {
          fail("LipschitzViolation", "adjacent samples exceed Lambda/rho0 slope");
        }
      }
      if (j + 1 < n_grid) {
        Vec2 q{p.x, p.y + hy};
        if (entry_gap(p, q) > bound * hy * (1.0 + 1e-9) + 1e-15) {
          fail("LipschitzViolation", "adjacent samples exceed Lambda/rho0 slope");
        }
      }
    }
  }
}

}  // namespace wavescope
