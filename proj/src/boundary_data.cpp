#include "wavescope/boundary_data.hpp"

#include <algorithm>
#include <cmath>

namespace wavescope {

namespace {

double falling_factorial(int p, int j) {
  double f = 1.0;
  for (int k = 0; k < j; ++k) f *= (p - k);
  return f;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - i + 1) / i;
  return b;
}

}  // namespace

double TimeProfile::derivative(int j, double t) const {
  if (t < 0.0) return 0.0;
  const double s = 1.0 / t_scale;
  auto power_term = [&](int jj) -> double {
    if (jj > p) return 0.0;
    return falling_factorial(p, jj) * std::pow(t * s, p - jj) * std::pow(s, jj);
  };
  switch (kind) {
    case Kind::power:
      return power_term(j);
    case Kind::power_sine: {
      // Leibniz on (t/ts)^p * sin(omega t).
      double acc = 0.0;
      for (int k = 0; k <= j; ++k) {
        const double trig = std::pow(omega, k) *
                            std::sin(omega * t + k * 1.5707963267948966);
        acc += binomial(j, k) * power_term(j - k) * trig;
      }
      return acc;
    }
  }
  return 0.0;
}

double TimeProfile::sup_derivative(int j, double t, int samples) const {
  if (t <= 0.0) return 0.0;
  if (kind == Kind::power) return std::abs(derivative(j, t));
  double m = 0.0;
  for (int i = 0; i <= samples; ++i) {
    m = std::max(m, std::abs(derivative(j, t * i / samples)));
  }
  return m;
}

BoundaryData zero_boundary_data() {
  BoundaryData d;
  d.spatial = [](Vec2) { return 0.0; };
  return d;
}

namespace {

// C^2 compactly supported bump: b(s) = (1-s^2)^4 on |s|<1.
double bump(double s) {
  const double q = 1.0 - s * s;
  return q > 0.0 ? q * q * q * q : 0.0;
}

}  // namespace

BoundaryData channel_top_bump(double x_center, double x_width, double y_fade,
                              double y_top, TimeProfile ramp, double t1) {
  BoundaryData d;
  d.ramp = ramp;
  d.t1 = t1;
  d.spatial = [=](Vec2 p) {
    const double bx = bump((p.x - x_center) / x_width);
    if (p.y >= y_top - 1e-12) return bx;
    if (p.y <= y_fade) return 0.0;
    // Smooth vertical fade; constant (== trace) near the top wall so the
    // ambient extension is exact where the solver reads it.
    const double s = (p.y - y_fade) / (y_top - y_fade);
    const double fade = s >= 1.0 ? 1.0 : (s <= 0.0 ? 0.0 : s * s * (3.0 - 2.0 * s));
    return bx * fade;
  };
  return d;
}

double boundary_c11_norm(const Domain& domain,
                         const std::function<double(Vec2)>& f, double ds) {
  if (ds <= 0.0) ds = domain.rho0 / 64.0;
  double total = 0.0;
  for (const auto& c : domain.charts) {
    const int n = std::max(5, static_cast<int>(std::ceil(2.0 * c.half_width / ds)) | 1);
    const double h = 2.0 * c.half_width / (n - 1);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
      const double u = -c.half_width + i * h;
      v[i] = f(c.point_at(u));
    }
    double sup = 0.0, sup1 = 0.0, sup2 = 0.0;
    for (int i = 0; i < n; ++i) {
      sup = std::max(sup, std::abs(v[i]));
      if (i + 1 < n) sup1 = std::max(sup1, std::abs(v[i + 1] - v[i]) / h);
      if (i > 0 && i + 1 < n)
        sup2 = std::max(sup2, std::abs(v[i + 1] - 2 * v[i] + v[i - 1]) / (h * h));
    }
    total = std::max(total, sup + domain.rho0 * sup1 + domain.rho0 * domain.rho0 * sup2);
  }
  return total;
}

double boundary_data_norm(const Domain& domain, const BoundaryData& data,
                          double t) {
  const int m = (domain.dim + 2) / 4;  // floor
  const int jmax = 2 * m + 4;
  const double spatial_norm = boundary_c11_norm(domain, data.spatial);
  double H = 0.0;
  double rp = 1.0;
  for (int j = 0; j <= jmax; ++j) {
    H += rp * data.ramp.sup_derivative(j, t) * spatial_norm;
    rp *= domain.rho0;
  }
  return H;
}

double data_size_ratio(const Domain& domain, const BoundaryData& data) {
  double sup = 0.0;
  for (const auto& s : domain.boundary_samples(domain.rho0 / 64.0)) {
    if (!domain.charts[s.chart].accessible) continue;
    sup = std::max(sup, std::abs(data.spatial(s.point)));
  }
  sup *= data.ramp.sup_derivative(0, data.t1);
  if (sup <= 0.0) fail("FlatData", "data vanishes on the accessible portion");
  return boundary_data_norm(domain, data, data.t1) / sup;
}

void check_compatibility(const BoundaryData& data, double tol) {
  const int jmax = 2 * 1 + 4;  // n = 2
  const double ref = std::max(1e-300, std::abs(data.ramp.value(data.t1)));
  // A derivative that vanishes at t = 0 makes the forward divided difference
  // shrink under grid refinement; a surviving derivative freezes it at the
  // derivative's value. Compare the probe at h and at 2h.
  auto probe = [&](int j, double h) {
    double acc = 0.0;
    for (int k = 0; k <= j; ++k) {
      const double sign = (j - k) % 2 == 0 ? 1.0 : -1.0;
      acc += sign * binomial(j, k) * data.ramp.value(k * h);
    }
    return acc / std::pow(h, j);
  };
  const double h = data.t1 / 512.0;
  for (int j = 0; j <= jmax; ++j) {
    const double fine = probe(j, h);
    const double coarse = probe(j, 2.0 * h);
    const double scale = ref / std::pow(data.t1, j);
    if (std::abs(fine) <= tol * scale) continue;           // numerically zero
    if (std::abs(fine) <= 0.75 * std::abs(coarse)) continue;  // shrinking
    fail("CompatibilityViolation",
         "time derivative of order " + std::to_string(j) +
             " does not vanish at t = 0");
  }
}

double divided_difference_derivative(const std::vector<double>& t,
                                     const std::vector<double>& g, int j,
                                     double at) {
  if (t.size() != g.size() || static_cast<int>(t.size()) < j + 2) {
    fail("InsufficientSmoothness", "too few samples for requested order");
  }
  const double h = t[1] - t[0];
  // Repeated central differencing; compare against a coarsened estimate to
  // detect blow-up.
  auto estimate = [&](int stride) -> double {
    std::vector<double> w;
    for (size_t i = 0; i < g.size(); i += stride) w.push_back(g[i]);
    const double hh = h * stride;
    std::vector<double> cur = w;
    for (int d = 0; d < j; ++d) {
      std::vector<double> nxt(cur.size() - 1);
      for (size_t i = 0; i + 1 < cur.size(); ++i) nxt[i] = (cur[i + 1] - cur[i]) / hh;
      cur = std::move(nxt);
      if (cur.size() < 2) break;
    }
    // Sample nearest to `at`.
    const double t0 = t[0] + 0.5 * j * hh;
    int idx = static_cast<int>(std::round((at - t0) / hh));
    idx = std::clamp(idx, 0, static_cast<int>(cur.size()) - 1);
    return cur[idx];
  };
  const double fine = estimate(1);
  if (static_cast<int>(g.size()) > 4 * (j + 2)) {
    const double coarse = estimate(2);
    const double scale = std::max({std::abs(fine), std::abs(coarse), 1e-12});
    // Divergence under refinement (growth like h^{-j}) marks a kink or jump.
    if (std::abs(fine - coarse) > 0.5 * scale &&
        std::abs(fine) > 1.5 * std::abs(coarse)) {
      fail("InsufficientSmoothness", "divided differences blow up under refinement");
    }
  }
  return fine;
}

}  // namespace wavescope
