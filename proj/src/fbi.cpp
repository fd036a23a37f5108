#include "wavescope/fbi.hpp"

#include <algorithm>
#include <cmath>

namespace wavescope {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
const double kGLx[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
const double kGLw[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

// Panel count sized to the integrand bandwidth: the Gaussian window varies on
// the sqrt(mu) scale and the complex shift adds oscillation mu*|y|.
long long panel_count(double mu, double T, double y_max, const FbiOptions& opt) {
  // The window scale is 1/sqrt(mu) but the y-derivative kernel carries a
  // mu^2 z^2 factor whose curvature extends well into the window tails, so
  // the density budget is several panels per window width plus the usual
  // oscillation term mu * |y|.
  const double bandwidth = 9.0 * std::sqrt(mu) + 0.75 * mu * y_max;
  long long panels =
      std::max<long long>(8, static_cast<long long>(std::ceil(bandwidth * T)));
  panels = std::max(panels, opt.min_panels);
  if (panels * opt.nodes_per_panel > opt.node_cap) {
    fail("QuadratureUnderResolved",
         "quadrature would need " + std::to_string(panels * opt.nodes_per_panel) +
             " nodes (cap " + std::to_string(opt.node_cap) + ")");
  }
  return panels;
}

}  // namespace

std::complex<double> fbi_transform_signal(const std::function<double(double)>& u,
                                          double T, double mu, double tau,
                                          double y, const FbiOptions& opt) {
  const long long panels = panel_count(mu, T, std::abs(y), opt);
  const std::complex<double> i1(0.0, 1.0);
  std::complex<double> acc(0.0, 0.0);
  for (long long p = 0; p < panels; ++p) {
    const double a = T * static_cast<double>(p) / panels;
    const double b = T * static_cast<double>(p + 1) / panels;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int q = 0; q < 16; ++q) {
      const double t = mid + half * kGLx[q];
      const std::complex<double> z = i1 * y + (tau - t);
      acc += half * kGLw[q] * std::exp(-0.5 * mu * z * z) * u(t);
    }
  }
  return std::sqrt(mu / (2.0 * kPi)) * acc;
}

FbiField fbi_transform(const WaveField& u, double mu, double tau,
                       const std::vector<double>& y_grid,
                       const FbiOptions& opt) {
  const double T = u.time_of(u.steps);
  if (mu * T * T < 1.0) fail("QuadratureUnderResolved", "need mu T^2 >= 1");
  if (!(tau > 0.0 && tau <= 0.5 * T + 1e-12)) {
    fail("QuadratureUnderResolved", "need tau in (0, T/2]");
  }
  double y_max = 0.0;
  for (double y : y_grid) y_max = std::max(y_max, std::abs(y));
  const long long panels = panel_count(mu, T, y_max, opt);

  FbiField F;
  F.mu = mu;
  F.tau = tau;
  F.T_horizon = T;
  F.grid = u.grid;
  F.y = y_grid;
  F.kind = u.kind;
  const size_t ls = F.layer_size();
  const size_t ny = y_grid.size();
  F.values.assign(ls * ny, {0.0, 0.0});
  if (opt.with_d2y) F.d2y.assign(ls * ny, {0.0, 0.0});

  // Kernel weights per (y, node); the spatial accumulation is a weighted sum
  // of time slices interpolated cubically from the stored history.
  const std::complex<double> i1(0.0, 1.0);
  const double pref = std::sqrt(mu / (2.0 * kPi));

  // Interpolation weights for a time t on the uniform history grid
  // (6-point Lagrange, clamped near the ends). The kernel's y-derivative
  // scales like mu^2, so the interpolation order has to carry the burden of
  // keeping the d2y quadrature honest at large mu.
  const int nt = u.steps;
  if (nt < 5) fail("QuadratureUnderResolved", "history too short to interpolate");
  const double dt = u.dt;
  std::vector<double> slice(ls);

  const long long total_nodes = panels * 16;
  std::vector<double> tq(total_nodes), wq(total_nodes);
  for (long long p = 0; p < panels; ++p) {
    const double a = T * static_cast<double>(p) / panels;
    const double b = T * static_cast<double>(p + 1) / panels;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int q = 0; q < 16; ++q) {
      tq[p * 16 + q] = mid + half * kGLx[q];
      wq[p * 16 + q] = half * kGLw[q];
    }
  }

  constexpr int kStencil = 6;
  for (long long n = 0; n < total_nodes; ++n) {
    const double t = tq[n];
    // Far outside the window the kernel magnitude exp(-mu((tau-t)^2 - y^2)/2)
    // underflows for every y sample; those nodes contribute exactly zero.
    const double worst_exponent =
        -0.5 * mu * ((tau - t) * (tau - t) - y_max * y_max);
    if (worst_exponent < -760.0) continue;
    int m0 = static_cast<int>(std::floor(t / dt)) - (kStencil / 2 - 1);
    m0 = std::clamp(m0, 0, nt - (kStencil - 1));
    double c[kStencil];
    {
      const double s = t / dt - m0;
      for (int k = 0; k < kStencil; ++k) {
        double w = 1.0;
        for (int j = 0; j < kStencil; ++j) {
          if (j != k) w *= (s - j) / (k - j);
        }
        c[k] = w;
      }
    }
    const double* layers[kStencil];
    for (int k = 0; k < kStencil; ++k) layers[k] = u.layer(m0 + k);
    for (size_t k = 0; k < ls; ++k) {
      double acc = 0.0;
      for (int q = 0; q < kStencil; ++q) acc += c[q] * layers[q][k];
      slice[k] = acc;
    }
    for (size_t iy = 0; iy < ny; ++iy) {
      const std::complex<double> z = i1 * y_grid[iy] + (tau - t);
      const std::complex<double> ker = pref * wq[n] * std::exp(-0.5 * mu * z * z);
      std::complex<double>* out = F.values.data() + ls * iy;
      if (opt.with_d2y) {
        // d2/dy2 of the kernel: mu (1 - mu z^2) K.
        const std::complex<double> ker2 = mu * (1.0 - mu * z * z) * ker;
        std::complex<double>* out2 = F.d2y.data() + ls * iy;
        for (size_t k = 0; k < ls; ++k) {
          out[k] += ker * slice[k];
          out2[k] += ker2 * slice[k];
        }
      } else {
        for (size_t k = 0; k < ls; ++k) out[k] += ker * slice[k];
      }
    }
  }
  return F;
}

std::vector<std::complex<double>> fbi_source(const WaveField& u, double mu,
                                             double tau, double y) {
  const double T = u.time_of(u.steps);
  const size_t ls = u.layer_size();
  const std::complex<double> i1(0.0, 1.0);
  const std::complex<double> z = i1 * y + (tau - T);
  const std::complex<double> ker =
      std::sqrt(mu / (2.0 * kPi)) * std::exp(-0.5 * mu * z * z);
  const double* uT = u.layer(u.steps);
  const double* u1 = u.layer(std::max(0, u.steps - 1));
  const double* u2 = u.layer(std::max(0, u.steps - 2));
  std::vector<std::complex<double>> f(ls);
  const double idt = 1.0 / (2.0 * u.dt);
  for (size_t k = 0; k < ls; ++k) {
    const double ut = (3.0 * uT[k] - 4.0 * u1[k] + u2[k]) * idt;
    f[k] = ker * (ut - mu * z * uT[k]);
  }
  return f;
}

EllipticResidual elliptic_residual(const FbiField& U, const AnisotropyField& A,
                                   const WaveField& u, bool zero_source) {
  if (U.d2y.empty()) fail("GridTooCoarse", "transform lacks the d2y component");
  const int nx = U.grid.nx, ny = U.grid.ny;
  const double hx = U.grid.hx(), hy = U.grid.hy();
  const double idx2 = 1.0 / (hx * hx), idy2 = 1.0 / (hy * hy);
  const double ixy = 1.0 / (4.0 * hx * hy);
  EllipticResidual res;
  res.per_y.assign(U.y.size(), 0.0);

  // Interior subgrid: nodes whose 8-neighborhood is fully interior.
  std::vector<unsigned char> deep(U.layer_size(), 0);
  long long count = 0;
  for (int j = 1; j < ny - 1; ++j) {
    for (int i = 1; i < nx - 1; ++i) {
      const size_t id = static_cast<size_t>(j) * nx + i;
      bool ok = true;
      for (int dj = -1; dj <= 1 && ok; ++dj)
        for (int di = -1; di <= 1 && ok; ++di)
          ok = U.kind[static_cast<size_t>(j + dj) * nx + (i + di)] == NodeKind::interior;
      if (ok) {
        deep[id] = 1;
        ++count;
      }
    }
  }
  if (count == 0) fail("GridTooCoarse", "no interior subgrid for second differences");
  res.nodes = count;

  for (size_t iy = 0; iy < U.y.size(); ++iy) {
    const std::complex<double>* V = U.values.data() + U.layer_size() * iy;
    const std::complex<double>* W = U.d2y.data() + U.layer_size() * iy;
    auto f = fbi_source(u, U.mu, U.tau, U.y[iy]);
    double acc = 0.0;
    for (int j = 1; j < ny - 1; ++j) {
      for (int i = 1; i < nx - 1; ++i) {
        const size_t id = static_cast<size_t>(j) * nx + i;
        if (!deep[id]) continue;
        const Vec2 p{U.grid.box.x0 + i * hx, U.grid.box.y0 + j * hy};
        const auto ae = A.at({p.x + 0.5 * hx, p.y});
        const auto aw = A.at({p.x - 0.5 * hx, p.y});
        const auto an = A.at({p.x, p.y + 0.5 * hy});
        const auto as = A.at({p.x, p.y - 0.5 * hy});
        std::complex<double> div =
            ae[0] * (V[id + 1] - V[id]) * idx2 - aw[0] * (V[id] - V[id - 1]) * idx2 +
            an[2] * (V[id + nx] - V[id]) * idy2 - as[2] * (V[id] - V[id - nx]) * idy2;
        div += ae[1] * ((V[id + nx + 1] + V[id + nx]) - (V[id - nx + 1] + V[id - nx])) * ixy -
               aw[1] * ((V[id + nx - 1] + V[id + nx]) - (V[id - nx - 1] + V[id - nx])) * ixy;
        div += an[1] * ((V[id + nx + 1] + V[id + 1]) - (V[id + nx - 1] + V[id - 1])) * ixy -
               as[1] * ((V[id - nx + 1] + V[id + 1]) - (V[id - nx - 1] + V[id - 1])) * ixy;
        const std::complex<double> r = W[id] + div - (zero_source ? 0.0 : 1.0) * f[id];
        acc += std::norm(r);
      }
    }
    res.per_y[iy] = std::sqrt(acc * hx * hy);
    res.total += acc * hx * hy;
  }
  const double dy = U.y.size() > 1 ? U.y[1] - U.y[0] : 1.0;
  res.total = std::sqrt(res.total * dy);
  return res;
}

GrowthReport fbi_growth_check(const FbiField& U, const WaveField& u) {
  GrowthReport rep;
  const int nx = U.grid.nx, ny = U.grid.ny;
  const double hx = U.grid.hx(), hy = U.grid.hy();
  const double m14 = std::pow(U.mu, 0.25);

  // Time integrals of |D^j u|^2 by the trapezoid rule, per node.
  const size_t ls = u.layer_size();
  std::vector<double> q0(ls, 0.0), q1(ls, 0.0), q2(ls, 0.0);
  for (int m = 0; m <= u.steps; ++m) {
    const double* um = u.layer(m);
    const double wt = (m == 0 || m == u.steps) ? 0.5 * u.dt : u.dt;
    for (int j = 1; j < ny - 1; ++j) {
      for (int i = 1; i < nx - 1; ++i) {
        const size_t id = static_cast<size_t>(j) * nx + i;
        if (u.kind[id] != NodeKind::interior) continue;
        const double ux = (um[id + 1] - um[id - 1]) / (2 * hx);
        const double uy = (um[id + nx] - um[id - nx]) / (2 * hy);
        const double uxx = (um[id + 1] - 2 * um[id] + um[id - 1]) / (hx * hx);
        const double uyy = (um[id + nx] - 2 * um[id] + um[id - nx]) / (hy * hy);
        const double uxy = (um[id + nx + 1] - um[id + nx - 1] - um[id - nx + 1] +
                            um[id - nx - 1]) /
                           (4 * hx * hy);
        q0[id] += wt * um[id] * um[id];
        q1[id] += wt * (ux * ux + uy * uy);
        q2[id] += wt * (uxx * uxx + 2 * uxy * uxy + uyy * uyy);
      }
    }
  }

  for (size_t iy = 0; iy < U.y.size(); ++iy) {
    const std::complex<double>* V = U.values.data() + ls * iy;
    const double env = m14 * std::exp(0.5 * U.mu * U.y[iy] * U.y[iy]);
    for (int j = 2; j < ny - 2; ++j) {
      for (int i = 2; i < nx - 2; ++i) {
        const size_t id = static_cast<size_t>(j) * nx + i;
        bool deep = true;
        for (int dj = -1; dj <= 1 && deep; ++dj)
          for (int di = -1; di <= 1 && deep; ++di)
            deep = U.kind[static_cast<size_t>(j + dj) * nx + (i + di)] ==
                   NodeKind::interior;
        if (!deep) continue;
        const std::complex<double> vx = (V[id + 1] - V[id - 1]) / (2 * hx);
        const std::complex<double> vy = (V[id + nx] - V[id - nx]) / (2 * hy);
        const std::complex<double> vxx = (V[id + 1] - 2.0 * V[id] + V[id - 1]) / (hx * hx);
        const std::complex<double> vyy =
            (V[id + nx] - 2.0 * V[id] + V[id - nx]) / (hy * hy);
        const std::complex<double> vxy = (V[id + nx + 1] - V[id + nx - 1] -
                                          V[id - nx + 1] + V[id - nx - 1]) /
                                         (4 * hx * hy);
        const double d0 = std::abs(V[id]);
        const double d1 = std::sqrt(std::norm(vx) + std::norm(vy));
        const double d2 =
            std::sqrt(std::norm(vxx) + 2 * std::norm(vxy) + std::norm(vyy));
        if (q0[id] > 0) rep.c_observed[0] = std::max(rep.c_observed[0], d0 / (env * std::sqrt(q0[id])));
        if (q1[id] > 0) rep.c_observed[1] = std::max(rep.c_observed[1], d1 / (env * std::sqrt(q1[id])));
        if (q2[id] > 0) rep.c_observed[2] = std::max(rep.c_observed[2], d2 / (env * std::sqrt(q2[id])));
      }
    }
  }
  return rep;
}

}  // namespace wavescope
