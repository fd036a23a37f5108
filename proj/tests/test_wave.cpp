#include <doctest.h>

#include <array>
#include <cmath>

#include "wavescope/propagation.hpp"
#include "wavescope/wave.hpp"

using namespace wavescope;

namespace {

// Closed-form traveling wave: u(x,t) = max(t - x1/c, 0)^6 solves
// u_tt = c^2 u_x1x1 with zero Cauchy data on x1 >= 0. For A = diag(c^2, 1)
// this is div(A grad u) with speed c along the first axis.
struct TravelingWave {
  double speed = 1.0;
  double value(Vec2 p, double t) const {
    const double s = t - p.x / speed;
    return s > 0.0 ? std::pow(s, 6) : 0.0;
  }
  double dx(Vec2 p, double t) const {
    const double s = t - p.x / speed;
    return s > 0.0 ? -6.0 * std::pow(s, 5) / speed : 0.0;
  }
};

BoundaryData dirichlet_from(const TravelingWave& w, double t1) {
  BoundaryData d;
  d.t1 = t1;
  d.ramp.p = 7;
  d.ramp.t_scale = t1;
  d.spatial = [](Vec2) { return 1.0; };
  // The solver only uses eval(); route the closed form through it.
  d.eval_hook = [w](Vec2 p, double t) { return w.value(p, t); };
  return d;
}

double l2_error(const WaveField& u, const TravelingWave& w, int m) {
  const int nx = u.nx(), ny = u.ny();
  const double hx = u.grid.hx(), hy = u.grid.hy();
  double acc = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const size_t id = static_cast<size_t>(j) * nx + i;
      if (u.kind[id] != NodeKind::interior) continue;
      const Vec2 p{u.grid.box.x0 + i * hx, u.grid.box.y0 + j * hy};
      const double e = u.layer(m)[id] - w.value(p, u.time_of(m));
      acc += e * e;
    }
  }
  return std::sqrt(acc * hx * hy);
}

Domain unit_square() {
  return make_box({0.0, 1.0, 0.0, 1.0}, 0.25, 1.0);
}

}  // namespace

TEST_CASE("coefficient field invariants: ellipticity and Lipschitz checks") {
  const Box2 box{0.0, 1.0, 0.0, 1.0};
  check_ellipticity(AnisotropyField::identity(), box, 9, 100);
  check_ellipticity(AnisotropyField::diagonal(4.0, 1.0), box, 9, 100);
  check_lipschitz(AnisotropyField::identity(), box, 9, 0.25);

  // A field claiming better ellipticity than it has.
  AnisotropyField bad = AnisotropyField::diagonal(4.0, 1.0);
  bad.lambda = 0.5;  // true lambda is 0.25
  CHECK_THROWS_WITH_AS(check_ellipticity(bad, box, 9, 100),
                       doctest::Contains("EllipticityViolation"), Error);

  // A field rougher than its declared Lipschitz modulus.
  AnisotropyField rough;
  rough.entries = [](Vec2 p) {
    return std::array<double, 3>{1.0 + 0.5 * (p.x > 0.5 ? 1.0 : 0.0), 0.0, 1.0};
  };
  rough.lambda = 0.5;
  rough.Lambda_lip = 0.1;
  CHECK_THROWS_WITH_AS(check_lipschitz(rough, box, 33, 1.0),
                       doctest::Contains("LipschitzViolation"), Error);
}

TEST_CASE("vanishing-rate overlay: solver run stays under the bound with a "
          "small fitted constant") {
  // Localized solution of the homogeneous problem on a box seen as the
  // rho0-ball scale: eps0 = sup_t L2 norm over the inner ball, H0 from the
  // t = 0 slice, and the bound must dominate the measured L2 norm on the
  // middle ball for a calibration constant below the documented cap.
  Domain dom = make_box({-1.0, 1.0, -1.0, 1.0}, 1.0, 1.0);
  AnisotropyField A = AnisotropyField::identity();
  BoundaryData zero = zero_boundary_data();
  zero.t1 = 1.0;
  const double r0 = 0.2, rho = 0.5, rho0 = 1.0;
  SolveExtras extras;
  extras.u0 = [&](Vec2 p) {
    const double r2 = (p.x * p.x + p.y * p.y) / (r0 * r0);
    const double q = 1.0 - r2;
    return q > 0.0 ? q * q * q * q : 0.0;
  };
  GridSpec grid{dom.hull, 97, 97, 0.5};
  const WaveField u = solve_ibvp(dom, A, zero, 1.0, grid, extras);

  auto ball_l2 = [&](int m, double r) {
    double acc = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const size_t id = static_cast<size_t>(j) * grid.nx + i;
        if (u.kind[id] != NodeKind::interior) continue;
        const Vec2 p{grid.box.x0 + i * grid.hx(), grid.box.y0 + j * grid.hy()};
        if (p.x * p.x + p.y * p.y > r * r) continue;
        acc += u.layer(m)[id] * u.layer(m)[id];
      }
    }
    return std::sqrt(acc * grid.hx() * grid.hy());
  };
  double eps0 = 0.0;
  for (int m = 0; m <= u.steps; m += 4) eps0 = std::max(eps0, ball_l2(m, r0));

  // H0: derivatives of the t = 0 slice up to order two over the unit ball.
  double h0 = 0.0;
  for (int j = 1; j < grid.ny - 1; ++j) {
    for (int i = 1; i < grid.nx - 1; ++i) {
      const size_t id = static_cast<size_t>(j) * grid.nx + i;
      if (u.kind[id] != NodeKind::interior) continue;
      const double* l0 = u.layer(0);
      const double hx = grid.hx(), hy = grid.hy();
      const double ux = (l0[id + 1] - l0[id - 1]) / (2 * hx);
      const double uy = (l0[id + grid.nx] - l0[id - grid.nx]) / (2 * hy);
      const double uxx = (l0[id + 1] - 2 * l0[id] + l0[id - 1]) / (hx * hx);
      const double uyy =
          (l0[id + grid.nx] - 2 * l0[id] + l0[id - grid.nx]) / (hy * hy);
      h0 += l0[id] * l0[id] + ux * ux + uy * uy + uxx * uxx + uyy * uyy;
    }
  }
  h0 = std::sqrt(h0 * grid.hx() * grid.hy());

  const double measured = ball_l2(0, rho);
  double fitted = 0.0;
  for (double C = 1.0; C <= 8.0; C += 0.5) {
    if (sucp_bound(rho, r0, rho0, eps0, h0, C) >= measured) {
      fitted = C;
      break;
    }
  }
  CHECK(fitted > 0.0);
  CHECK(fitted <= 4.0);
  MESSAGE("fitted vanishing-rate constant: ", fitted);
}

TEST_CASE("zero data keeps the field identically zero") {
  Domain dom = unit_square();
  AnisotropyField A = AnisotropyField::identity();
  BoundaryData zero = zero_boundary_data();
  zero.t1 = 0.25;
  GridSpec grid{dom.hull, 33, 33, 0.5};
  const WaveField u = solve_ibvp(dom, A, zero, 0.5, grid);
  for (double v : u.values) CHECK(v == 0.0);
}

TEST_CASE("CFL guard rejects an oversized step") {
  Domain dom = unit_square();
  GridSpec grid{dom.hull, 33, 33, -0.1};
  BoundaryData zero = zero_boundary_data();
  CHECK_THROWS_WITH_AS(solve_ibvp(dom, AnisotropyField::identity(), zero, 0.5, grid),
                       doctest::Contains("CflViolation"), Error);
}

TEST_CASE("grid must cover the domain hull") {
  Domain dom = unit_square();
  GridSpec grid{{0.0, 0.5, 0.0, 1.0}, 33, 33, 0.5};
  BoundaryData zero = zero_boundary_data();
  CHECK_THROWS_WITH_AS(solve_ibvp(dom, AnisotropyField::identity(), zero, 0.5, grid),
                       doctest::Contains("NonconformingBoundary"), Error);
}

TEST_CASE("traveling wave converges at second order, identity coefficients") {
  Domain dom = unit_square();
  AnisotropyField A = AnisotropyField::identity();
  TravelingWave w{1.0};
  BoundaryData data = dirichlet_from(w, 1.0);
  const double T = 0.9;
  double prev = 0.0;
  std::vector<double> errs;
  for (int n : {33, 65, 129}) {
    GridSpec grid{dom.hull, n, n, 0.5};
    const WaveField u = solve_ibvp(dom, A, data, T, grid);
    errs.push_back(l2_error(u, w, u.steps));
  }
  for (size_t k = 0; k + 1 < errs.size(); ++k) {
    const double ratio = errs[k] / errs[k + 1];
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
  }
  (void)prev;
}

TEST_CASE("traveling wave converges at second order, diagonal coefficients") {
  Domain dom = unit_square();
  AnisotropyField A = AnisotropyField::diagonal(4.0, 1.0);
  TravelingWave w{2.0};
  BoundaryData data = dirichlet_from(w, 1.0);
  const double T = 0.9;
  std::vector<double> errs;
  for (int n : {33, 65, 129}) {
    GridSpec grid{dom.hull, n, n, 0.5};
    const WaveField u = solve_ibvp(dom, A, data, T, grid);
    errs.push_back(l2_error(u, w, u.steps));
  }
  for (size_t k = 0; k + 1 < errs.size(); ++k) {
    const double ratio = errs[k] / errs[k + 1];
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
  }
}

TEST_CASE("homogeneous problem conserves the discrete energy") {
  Domain dom = unit_square();
  AnisotropyField A = AnisotropyField::identity();
  BoundaryData zero = zero_boundary_data();
  zero.t1 = 0.25;
  SolveExtras extras;
  extras.u0 = [](Vec2 p) {
    const double r2 = (p.x - 0.5) * (p.x - 0.5) + (p.y - 0.5) * (p.y - 0.5);
    const double q = 1.0 - r2 / 0.09;
    return q > 0.0 ? q * q * q * q : 0.0;
  };
  GridSpec grid{dom.hull, 65, 65, 0.5};
  // 10^3 steps at this CFL.
  const double T = 1000 * 0.5 * (1.0 / 64.0);
  const WaveField u = solve_ibvp(dom, A, zero, T, grid, extras);
  CHECK(u.steps >= 1000);
  // The staggered invariant is conserved to round-off.
  const double e0 = discrete_energy(u, A, 1);
  double emin = e0, emax = e0;
  for (int m = 1; m < u.steps; m += 7) {
    const double e = discrete_energy(u, A, m);
    emin = std::min(emin, e);
    emax = std::max(emax, e);
  }
  CHECK((emax - emin) / e0 < 1e-3);
  // The pointwise energy K oscillates at the discretization scale but must
  // not drift secularly.
  const double k0 = energy(u, A, 1);
  const double kend = energy(u, A, u.steps - 1);
  CHECK(std::abs(kend - k0) / k0 < 0.2);
}

TEST_CASE("forced problem obeys the exponential energy bound") {
  // K(tau) <= e T int_0^T int F^2 with 10% slack, 10 random forcings.
  Domain dom = unit_square();
  AnisotropyField A = AnisotropyField::identity();
  BoundaryData zero = zero_boundary_data();
  zero.t1 = 0.25;
  unsigned long long s = 7;
  auto uni = [&]() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  };
  const double T = 1.0;
  for (int trial = 0; trial < 10; ++trial) {
    const double ax = 1.0 + 2.0 * uni(), ay = 1.0 + 2.0 * uni();
    const double amp = 0.5 + uni();
    const double om = 1.0 + 3.0 * uni();
    SolveExtras extras;
    extras.forcing = [=](Vec2 p, double t) {
      return amp * std::sin(ax * 3.14159265358979 * p.x) *
             std::sin(ay * 3.14159265358979 * p.y) * std::cos(om * t);
    };
    GridSpec grid{dom.hull, 49, 49, 0.5};
    const WaveField u = solve_ibvp(dom, A, zero, T, grid, extras);
    // Space-time integral of F^2 over the domain by midpoint quadrature.
    double ff = 0.0;
    const double hx = grid.hx(), hy = grid.hy();
    for (int m = 0; m <= u.steps; ++m) {
      double plane = 0.0;
      for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
          const size_t id = static_cast<size_t>(j) * grid.nx + i;
          if (u.kind[id] != NodeKind::interior) continue;
          const Vec2 p{grid.box.x0 + i * hx, grid.box.y0 + j * hy};
          const double F = extras.forcing(p, u.time_of(m));
          plane += F * F;
        }
      }
      ff += plane * hx * hy * u.dt * ((m == 0 || m == u.steps) ? 0.5 : 1.0);
    }
    const double bound = std::exp(1.0) * T * ff * 1.10;
    for (int m = u.steps / 4; m <= u.steps; m += u.steps / 4) {
      CHECK(energy(u, A, m) <= bound);
    }
  }
}

TEST_CASE("flux of the zero field vanishes") {
  Domain dom = make_channel(2.0, 1.0, 0.25, 2.0, [](double) { return 0.0; });
  AnisotropyField A = AnisotropyField::identity();
  BoundaryData zero = zero_boundary_data();
  zero.t1 = 0.25;
  GridSpec grid{dom.hull, 65, 33, 0.5};
  const WaveField u = solve_ibvp(dom, A, zero, 0.4, grid);
  const FluxTrace f = boundary_flux(u, dom, A, zero);
  for (double v : f.values) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("flux of a static linear field is exact") {
  // u = x with A = I on the measurement wall of a box whose sigma chart is
  // the top: A grad u . nu = grad u . nu. To probe a wall with nu = (1, 0),
  // rotate the linear field instead: u = y gives flux 1 on the top wall.
  Domain dom = make_channel(2.0, 1.0, 0.25, 2.0, [](double) { return 0.0; });
  AnisotropyField A = AnisotropyField::identity();
  BoundaryData lin;
  lin.t1 = 0.25;
  lin.ramp.p = 0;  // constant-in-time ramp
  lin.ramp.t_scale = 1.0;
  lin.spatial = [](Vec2) { return 1.0; };
  lin.eval_hook = [](Vec2 p, double) { return p.y; };
  GridSpec grid{dom.hull, 65, 33, 0.5};
  WaveField u = solve_ibvp(dom, A, lin, 0.2, grid);
  // Overwrite the history with the static field; the flux extraction is a
  // pure post-processing of the stored layers.
  for (int m = 0; m <= u.steps; ++m) {
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const size_t id = static_cast<size_t>(j) * grid.nx + i;
        const double y = grid.box.y0 + j * grid.hy();
        u.layer(m)[id] = y;
      }
    }
  }
  const FluxTrace f = boundary_flux(u, dom, A, lin);
  for (size_t k = 0; k < f.arclength.size(); ++k) {
    CHECK(f.value(f.times.size() - 1, static_cast<int>(k)) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("flux matches the analytic traveling-wave derivative") {
  Domain dom = make_channel(1.0, 1.0, 0.25, 2.0, [](double) { return 0.0; });
  dom.sigma_chart = 2;  // left wall: nu = (-1, 0), flux = -du/dx
  AnisotropyField A = AnisotropyField::identity();
  TravelingWave w{1.0};
  BoundaryData data = dirichlet_from(w, 1.0);
  std::vector<double> errs;
  for (int n : {33, 65, 129}) {
    GridSpec grid{dom.hull, n, n, 0.5};
    const WaveField u = solve_ibvp(dom, A, data, 0.9, grid);
    const FluxTrace f = boundary_flux(u, dom, A, data);
    double worst = 0.0;
    const int m = u.steps;
    for (size_t k = 0; k < f.points.size(); ++k) {
      const double analytic = -w.dx(f.points[k], u.time_of(m));
      worst = std::max(worst, std::abs(f.value(m, static_cast<int>(k)) - analytic));
    }
    errs.push_back(worst);
  }
  CHECK(errs[2] < errs[0]);
  CHECK(errs[2] / errs[1] < 0.6);  // at least first-order shrink per halving
}

TEST_CASE("flux mismatch scaling: zero, constant and homogeneity") {
  FluxTrace f1, f2;
  const int ns = 11, nt = 21;
  const double T = 2.0;
  f1.times.resize(nt);
  for (int m = 0; m < nt; ++m) f1.times[m] = T * m / (nt - 1);
  f1.arclength.resize(ns);
  f1.weights.assign(ns, 0.1);  // |Sigma| = 1.1
  f1.values.assign(static_cast<size_t>(ns) * nt, 0.0);
  f2 = f1;
  const double rho0 = 0.5;
  CHECK(flux_mismatch_epsilon(f1, f2, T, rho0) == doctest::Approx(0.0));

  // Constant unit mismatch: eps = sqrt(|Sigma| / rho0^{n-3}).
  for (auto& v : f2.values) v = 1.0;
  const double sig = 1.1;
  CHECK(flux_mismatch_epsilon(f1, f2, T, rho0) ==
        doctest::Approx(std::sqrt(sig / std::pow(rho0, -1.0))).epsilon(1e-12));

  // Linear homogeneity in the mismatch amplitude.
  FluxTrace f3 = f1;
  for (auto& v : f3.values) v = 2.5;
  CHECK(flux_mismatch_epsilon(f1, f3, T, rho0) ==
        doctest::Approx(2.5 * flux_mismatch_epsilon(f1, f2, T, rho0)).epsilon(1e-12));

  // Symmetry.
  CHECK(flux_mismatch_epsilon(f2, f1, T, rho0) ==
        doctest::Approx(flux_mismatch_epsilon(f1, f2, T, rho0)));

  // Traces with different sampling are rejected.
  FluxTrace narrow = f1;
  narrow.arclength.pop_back();
  narrow.weights.pop_back();
  CHECK_THROWS_WITH_AS(flux_mismatch_epsilon(f1, narrow, T, rho0),
                       doctest::Contains("GridMismatch"), Error);
}

TEST_CASE("solution trace matches the data on the boundary") {
  Domain dom = make_channel(2.0, 1.0, 0.25, 2.0, [](double) { return 0.0; });
  AnisotropyField A = AnisotropyField::identity();
  TimeProfile ramp;
  ramp.p = 7;
  ramp.t_scale = 0.25;
  BoundaryData data = channel_top_bump(1.0, 0.6, 0.5, 1.0, ramp, 0.25);
  GridSpec grid{dom.hull, 129, 65, 0.5};
  const WaveField u = solve_ibvp(dom, A, data, 0.5, grid);
  const int m = u.steps;
  double worst = 0.0;
  for (const auto& s : dom.boundary_samples(0.05)) {
    const double trace = u.sample(m, s.point);
    worst = std::max(worst, std::abs(trace - data.eval(s.point, u.time_of(m))));
  }
  CHECK(worst < 5e-2 * std::max(1.0, data.ramp.value(u.time_of(m))));
}
