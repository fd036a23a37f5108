#include "wavescope/wave.hpp"

#include <algorithm>
#include <cmath>

#include "wavescope/parallel.hpp"

namespace wavescope {

namespace {

// Crossing fraction s in (0, 1] along the segment interior -> ghost, found by
// bisection of the membership test. The geometry is fixed in time so this
// runs once at setup.
double find_crossing(const Domain& domain, Vec2 xi, Vec2 xg, Vec2* out) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    Vec2 pm = xi + mid * (xg - xi);
    if (domain.inside(pm)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s = 0.5 * (lo + hi);
  *out = xi + s * (xg - xi);
  return s;
}

}  // namespace

double WaveField::sample(int m, Vec2 p) const {
  const double fx = (p.x - grid.box.x0) / grid.hx();
  const double fy = (p.y - grid.box.y0) / grid.hy();
  int i = std::clamp(static_cast<int>(std::floor(fx)), 0, grid.nx - 2);
  int j = std::clamp(static_cast<int>(std::floor(fy)), 0, grid.ny - 2);
  const double tx = fx - i, ty = fy - j;
  const double* u = layer(m);
  const size_t id = static_cast<size_t>(j) * grid.nx + i;
  return (1 - tx) * (1 - ty) * u[id] + tx * (1 - ty) * u[id + 1] +
         (1 - tx) * ty * u[id + grid.nx] + tx * ty * u[id + grid.nx + 1];
}

WaveField solve_ibvp(const Domain& domain, const AnisotropyField& A,
                     const BoundaryData& data, double T, const GridSpec& grid,
                     const SolveExtras& extras, int threads) {
  const double tol = 1e-9 * (grid.box.x1 - grid.box.x0);
  if (domain.hull.x0 < grid.box.x0 - tol || domain.hull.x1 > grid.box.x1 + tol ||
      domain.hull.y0 < grid.box.y0 - tol || domain.hull.y1 > grid.box.y1 + tol) {
    fail("NonconformingBoundary", "grid box does not cover the domain hull");
  }
  const int nx = grid.nx, ny = grid.ny;
  const double hx = grid.hx(), hy = grid.hy();
  const double h = std::min(hx, hy);

  WaveField w;
  w.grid = grid;
  const double dt0 = grid.c_cfl * h * std::sqrt(A.lambda);
  if (dt0 <= 0.0) fail("CflViolation", "empty CFL bound");
  w.steps = std::max(1, static_cast<int>(std::ceil(T / dt0 - 1e-12)));
  w.dt = T / w.steps;
  if (w.dt > dt0 * (1.0 + 1e-9)) fail("CflViolation", "time step above CFL bound");

  const size_t npts = static_cast<size_t>(nx) * ny;
  w.kind.assign(npts, NodeKind::exterior);
  auto pt = [&](int i, int j) -> Vec2 {
    return {grid.box.x0 + i * hx, grid.box.y0 + j * hy};
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (domain.inside(pt(i, j))) w.kind[static_cast<size_t>(j) * nx + i] = NodeKind::interior;
    }
  }
  // Ghost ring: exterior nodes with an interior 8-neighbor.
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const size_t id = static_cast<size_t>(j) * nx + i;
      if (w.kind[id] != NodeKind::exterior) continue;
      bool adj = false;
      for (int dj = -1; dj <= 1 && !adj; ++dj) {
        for (int di = -1; di <= 1 && !adj; ++di) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
          adj = w.kind[static_cast<size_t>(jj) * nx + ii] == NodeKind::interior;
        }
      }
      if (adj) w.kind[id] = NodeKind::ghost;
    }
  }
  // One stencil per ghost: prefer axis neighbors (shorter extrapolation),
  // fall back to a diagonal one.
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const size_t id = static_cast<size_t>(j) * nx + i;
      if (w.kind[id] != NodeKind::ghost) continue;
      GhostStencil g;
      g.node = static_cast<int>(id);
      static const int off[8][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1},
                                    {-1, -1}, {1, -1}, {-1, 1}, {1, 1}};
      for (int k = 0; k < 8; ++k) {
        const int ii = i + off[k][0], jj = j + off[k][1];
        if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
        const size_t nid = static_cast<size_t>(jj) * nx + ii;
        if (w.kind[nid] != NodeKind::interior) continue;
        g.interior_neighbor = static_cast<int>(nid);
        g.s = find_crossing(domain, pt(ii, jj), pt(i, j), &g.crossing);
        break;
      }
      w.ghosts.push_back(g);
    }
  }

  w.values.assign(npts * (w.steps + 1), 0.0);

  auto fill_ghosts = [&](double* layer, double t) {
    for (const auto& g : w.ghosts) {
      if (g.interior_neighbor < 0) {
        // No usable neighbor (isolated corner): take the data at the node.
        layer[g.node] = data.eval(pt(g.node % nx, g.node / nx), t);
        continue;
      }
      const double psi_b = data.eval(g.crossing, t);
      if (g.s >= 0.5) {
        layer[g.node] = (psi_b - (1.0 - g.s) * layer[g.interior_neighbor]) / g.s;
      } else {
        layer[g.node] = psi_b;  // boundary hugs the ghost node
      }
    }
  };

  // Initial layers. u^1 comes from the Taylor start
  //   u^1 = u0 + dt v0 + dt^2/2 (div(A grad u0) + F(.,0)).
  double* u0 = w.layer(0);
  if (extras.u0) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const size_t id = static_cast<size_t>(j) * nx + i;
        if (w.kind[id] == NodeKind::interior) u0[id] = extras.u0(pt(i, j));
      }
  }
  fill_ghosts(u0, 0.0);

  const double idx2 = 1.0 / (hx * hx), idy2 = 1.0 / (hy * hy);
  const double ixy = 1.0 / (4.0 * hx * hy);

  // div(A grad u) via conservative fluxes on half-integer faces; the cross
  // terms use centered corner differences.
  auto apply_L = [&](const double* u, int i, int j) -> double {
    const size_t id = static_cast<size_t>(j) * nx + i;
    const Vec2 p = pt(i, j);
    const auto ae = A.at({p.x + 0.5 * hx, p.y});
    const auto aw = A.at({p.x - 0.5 * hx, p.y});
    const auto an = A.at({p.x, p.y + 0.5 * hy});
    const auto as = A.at({p.x, p.y - 0.5 * hy});
    const double uc = u[id];
    const double ue = u[id + 1], uw = u[id - 1];
    const double un = u[id + nx], us = u[id - nx];
    const double une = u[id + nx + 1], unw = u[id + nx - 1];
    const double use_ = u[id - nx + 1], usw = u[id - nx - 1];

    double r = ae[0] * (ue - uc) * idx2 - aw[0] * (uc - uw) * idx2 +
               an[2] * (un - uc) * idy2 - as[2] * (uc - us) * idy2;
    // d/dx (a12 du/dy) + d/dy (a12 du/dx)
    r += ae[1] * ((une + un) - (use_ + us)) * ixy -
         aw[1] * ((unw + un) - (usw + us)) * ixy;
    r += an[1] * ((une + ue) - (unw + uw)) * ixy -
         as[1] * ((use_ + ue) - (usw + uw)) * ixy;
    return r;
  };

  double* u1 = w.layer(1);
  {
    const double t1 = w.dt;
    for (int j = 1; j < ny - 1; ++j) {
      for (int i = 1; i < nx - 1; ++i) {
        const size_t id = static_cast<size_t>(j) * nx + i;
        if (w.kind[id] != NodeKind::interior) continue;
        double acc = u0[id];
        if (extras.v0) acc += w.dt * extras.v0(pt(i, j));
        double lap = apply_L(u0, i, j);
        if (extras.forcing) lap += extras.forcing(pt(i, j), 0.0);
        u1[id] = acc + 0.5 * w.dt * w.dt * lap;
      }
    }
    // Hull-edge interior nodes (no room for the stencil) follow the data.
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const size_t id = static_cast<size_t>(j) * nx + i;
        if (w.kind[id] == NodeKind::interior &&
            (i == 0 || j == 0 || i == nx - 1 || j == ny - 1)) {
          u1[id] = data.eval(pt(i, j), t1);
        }
      }
    }
    fill_ghosts(u1, t1);
  }

  const double dt2 = w.dt * w.dt;
  for (int m = 1; m < w.steps; ++m) {
    const double* um = w.layer(m);
    const double* up = w.layer(m - 1);
    double* un_ = w.layer(m + 1);
    const double tn = w.time_of(m + 1);
    const double tm = w.time_of(m);
    parallel_for(1, ny - 1, threads, [&](int j) {
      for (int i = 1; i < nx - 1; ++i) {
        const size_t id = static_cast<size_t>(j) * nx + i;
        if (w.kind[id] != NodeKind::interior) continue;
        double lap = apply_L(um, i, j);
        if (extras.forcing) lap += extras.forcing(pt(i, j), tm);
        un_[id] = 2.0 * um[id] - up[id] + dt2 * lap;
      }
    });
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const size_t id = static_cast<size_t>(j) * nx + i;
        if (w.kind[id] == NodeKind::interior &&
            (i == 0 || j == 0 || i == nx - 1 || j == ny - 1)) {
          un_[id] = data.eval(pt(i, j), tn);
        }
      }
    }
    fill_ghosts(un_, tn);
  }
  return w;
}

double energy(const WaveField& u, const AnisotropyField& A, int m) {
  const int nx = u.nx(), ny = u.ny();
  const double hx = u.grid.hx(), hy = u.grid.hy();
  const double* um = u.layer(m);
  const int mp = std::min(m + 1, u.steps);
  const int mm = std::max(m - 1, 0);
  const double* up = u.layer(mp);
  const double* uq = u.layer(mm);
  const double itd = 1.0 / (u.dt * (mp - mm));
  double acc = 0.0;
  for (int j = 1; j < ny - 1; ++j) {
    for (int i = 1; i < nx - 1; ++i) {
      const size_t id = static_cast<size_t>(j) * nx + i;
      if (u.kind[id] != NodeKind::interior) continue;
      const double ux = (um[id + 1] - um[id - 1]) / (2.0 * hx);
      const double uy = (um[id + nx] - um[id - nx]) / (2.0 * hy);
      const Vec2 p{u.grid.box.x0 + i * hx, u.grid.box.y0 + j * hy};
      const auto a = A.at(p);
      const double strain = a[0] * ux * ux + 2.0 * a[1] * ux * uy + a[2] * uy * uy;
      const double ut = (up[id] - uq[id]) * itd;
      acc += strain + ut * ut;
    }
  }
  return acc * hx * hy;
}

double discrete_energy(const WaveField& u, const AnisotropyField& A, int m) {
  const int nx = u.nx(), ny = u.ny();
  const double hx = u.grid.hx(), hy = u.grid.hy();
  const int mp = std::min(m + 1, u.steps);
  const double* a_ = u.layer(m);
  const double* b_ = u.layer(mp);
  double kinetic = 0.0;
  for (size_t id = 0; id < u.layer_size(); ++id) {
    if (u.kind[id] != NodeKind::interior) continue;
    const double v = (b_[id] - a_[id]) / u.dt;
    kinetic += v * v;
  }
  kinetic *= 0.5 * hx * hy;

  // Face-based stiffness form matching the conservative update fluxes.
  double strain = 0.0;
  auto interior = [&](int i, int j) {
    return u.kind[static_cast<size_t>(j) * nx + i] == NodeKind::interior;
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      if (!interior(i, j) && !interior(i + 1, j)) continue;
      const size_t id = static_cast<size_t>(j) * nx + i;
      const Vec2 p{u.grid.box.x0 + (i + 0.5) * hx, u.grid.box.y0 + j * hy};
      const double a11 = A.at(p)[0];
      strain += a11 * (a_[id + 1] - a_[id]) * (b_[id + 1] - b_[id]) / (hx * hx);
    }
  }
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!interior(i, j) && !interior(i, j + 1)) continue;
      const size_t id = static_cast<size_t>(j) * nx + i;
      const Vec2 p{u.grid.box.x0 + i * hx, u.grid.box.y0 + (j + 0.5) * hy};
      const double a22 = A.at(p)[2];
      strain += a22 * (a_[id + nx] - a_[id]) * (b_[id + nx] - b_[id]) / (hy * hy);
    }
  }
  return kinetic + 0.5 * strain * hx * hy;
}

FluxTrace boundary_flux(const WaveField& u, const Domain& domain,
                        const AnisotropyField& A, const BoundaryData& data,
                        double ds) {
  if (ds <= 0.0) ds = 2.0 * std::min(u.grid.hx(), u.grid.hy());
  auto all = domain.sigma_samples(ds);
  if (all.empty()) fail("EmptyAccessiblePortion", "no measurement samples");

  const double d = 1.5 * std::min(u.grid.hx(), u.grid.hy());

  // Keep samples whose two inward probe points are interior; chart-end
  // samples at corners drop out. The selection is a pure function of the
  // geometry, so paired traces stay aligned.
  std::vector<BoundarySample> samples;
  for (const auto& s : all) {
    Vec2 p1 = s.point - d * s.outward_normal;
    Vec2 p2 = s.point - 2.0 * d * s.outward_normal;
    if (domain.inside(p1) && domain.inside(p2)) samples.push_back(s);
  }
  if (samples.size() < 3) {
    fail("StencilOutOfDomain", "measurement portion lacks two interior layers");
  }

  FluxTrace f;
  f.arclength.reserve(samples.size());
  for (const auto& s : samples) {
    f.arclength.push_back(s.arclength);
    f.points.push_back(s.point);
    f.weights.push_back(s.weight);
  }
  f.times.resize(u.steps + 1);
  f.values.resize(static_cast<size_t>(u.steps + 1) * samples.size());

  const double du_tan = ds * 0.5;
  for (int m = 0; m <= u.steps; ++m) {
    const double t = u.time_of(m);
    f.times[m] = t;
    for (size_t k = 0; k < samples.size(); ++k) {
      const auto& s = samples[k];
      const double ub = data.eval(s.point, t);
      const double u1 = u.sample(m, s.point - d * s.outward_normal);
      const double u2 = u.sample(m, s.point - 2.0 * d * s.outward_normal);
      const double dnu = (3.0 * ub - 4.0 * u1 + u2) / (2.0 * d);
      // Tangential derivative of the trace from the data itself.
      Vec2 tau{-s.outward_normal.y, s.outward_normal.x};
      const double gp = data.eval(s.point + du_tan * tau, t);
      const double gm = data.eval(s.point - du_tan * tau, t);
      const double dtau = (gp - gm) / (2.0 * du_tan);
      const auto a = A.at(s.point);
      const Vec2 anu{a[0] * s.outward_normal.x + a[1] * s.outward_normal.y,
                     a[1] * s.outward_normal.x + a[2] * s.outward_normal.y};
      const double flux = dot(anu, s.outward_normal) * dnu + dot(anu, tau) * dtau;
      f.values[static_cast<size_t>(m) * samples.size() + k] = flux;
    }
  }
  return f;
}

double flux_mismatch_epsilon(const FluxTrace& f1, const FluxTrace& f2, double T,
                             double rho0, int dim) {
  if (f1.arclength.size() != f2.arclength.size() ||
      f1.times.size() != f2.times.size()) {
    fail("GridMismatch", "flux traces sampled differently");
  }
  const size_t ns = f1.arclength.size();
  const size_t nt = f1.times.size();
  double acc = 0.0;
  for (size_t m = 0; m < nt; ++m) {
    double line = 0.0;
    for (size_t k = 0; k < ns; ++k) {
      const double dfl = f1.values[m * ns + k] - f2.values[m * ns + k];
      line += dfl * dfl * f1.weights[k];
    }
    const double wt = (m == 0 || m == nt - 1) ? 0.5 : 1.0;  // trapezoid in t
    const double dt = f1.times[1] - f1.times[0];
    acc += line * wt * dt;
  }
  return std::sqrt(acc / (T * std::pow(rho0, dim - 3)));
}

}  // namespace wavescope
