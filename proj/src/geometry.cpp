#include "wavescope/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavescope {

namespace {

// Catmull-Rom value/derivatives on a uniform sample grid with clamped ends.
struct CubicEval {
  const std::vector<double>& s;
  double x0, dx;

  void locate(double u, int* i, double* t) const {
    const int n = static_cast<int>(s.size());
    double f = (u - x0) / dx;
    int cell = static_cast<int>(std::floor(f));
    cell = std::clamp(cell, 0, n - 2);
    *i = cell;
    *t = f - cell;
  }
  double at(int i) const {
    const int n = static_cast<int>(s.size());
    return s[std::clamp(i, 0, n - 1)];
  }
  double value(double u) const {
    int i;
    double t;
    locate(u, &i, &t);
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    const double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
    const double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
    const double c = 0.5 * (p2 - p0);
    return ((a * t + b) * t + c) * t + p1;
  }
  double deriv1(double u) const {
    int i;
    double t;
    locate(u, &i, &t);
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    const double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
    const double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
    const double c = 0.5 * (p2 - p0);
    return ((3.0 * a * t + 2.0 * b) * t + c) / dx;
  }
  double deriv2(double u) const {
    int i;
    double t;
    locate(u, &i, &t);
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    const double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
    const double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
    return (6.0 * a * t + 2.0 * b) / (dx * dx);
  }
};

}  // namespace

double BoundaryChart::eval(double u) const {
  CubicEval e{phi, -half_width, du()};
  return e.value(u);
}

double BoundaryChart::eval_d1(double u) const {
  CubicEval e{phi, -half_width, du()};
  return e.deriv1(u);
}

double BoundaryChart::eval_d2(double u) const {
  CubicEval e{phi, -half_width, du()};
  return e.deriv2(u);
}

Vec2 BoundaryChart::outward_normal(double u) const {
  const double d = eval_d1(u);
  const double w = std::sqrt(1.0 + d * d);
  // Interior lies on v > phi(u); the outward direction in frame
  // coordinates is (phi', -1)/sqrt(1+phi'^2).
  Vec2 n = (d / w) * frame.t_hat - (1.0 / w) * frame.n_hat;
  return n;
}

double BoundaryChart::surface_weight(double u) const {
  const double d = eval_d1(u);
  return std::sqrt(1.0 + d * d);
}

double BoundaryChart::c11_norm(double rho0) const {
  const int n = static_cast<int>(phi.size());
  if (n < 3) fail("ChartViolation", "chart '" + name + "': too few samples");
  const double h = du();
  double sup = 0.0, sup1 = 0.0, sup2 = 0.0;
  for (int i = 0; i < n; ++i) {
    sup = std::max(sup, std::abs(phi[i]));
    if (i + 1 < n) sup1 = std::max(sup1, std::abs(phi[i + 1] - phi[i]) / h);
    if (i > 0 && i + 1 < n) {
      sup2 = std::max(sup2,
                      std::abs(phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h));
    }
  }
  return sup + rho0 * sup1 + rho0 * rho0 * sup2;
}

bool Domain::inside(Vec2 p) const {
  if (!hull.contains(p)) return false;
  if (bulk && !bulk(p)) return false;
  for (const auto& c : charts) {
    double u, v;
    c.frame.to_local(p, &u, &v);
    if (std::abs(u) <= c.half_width && std::abs(v) <= chart_band) {
      if (v <= c.eval(u)) return false;
    }
  }
  return true;
}

std::vector<BoundarySample> Domain::boundary_samples(double ds) const {
  std::vector<BoundarySample> out;
  for (int ci = 0; ci < static_cast<int>(charts.size()); ++ci) {
    const auto& c = charts[ci];
    const int n = std::max(2, static_cast<int>(std::ceil(2.0 * c.half_width / ds)) + 1);
    const double step = 2.0 * c.half_width / (n - 1);
    double arc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = -c.half_width + i * step;
      BoundarySample s;
      s.point = c.point_at(u);
      s.outward_normal = c.outward_normal(u);
      const double w = c.surface_weight(u);
      // Trapezoid end weights.
      s.weight = w * step * ((i == 0 || i == n - 1) ? 0.5 : 1.0);
      if (i > 0) arc += 0.5 * (w + c.surface_weight(u - step)) * step;
      s.arclength = arc;
      s.chart = ci;
      out.push_back(s);
    }
  }
  return out;
}

std::vector<BoundarySample> Domain::sigma_samples(double ds) const {
  if (sigma_chart < 0) fail("EmptyAccessiblePortion", "no measurement portion selected");
  std::vector<BoundarySample> out;
  for (auto& s : boundary_samples(ds)) {
    if (s.chart == sigma_chart) out.push_back(s);
  }
  return out;
}

double Domain::measured_volume(double resolution) const {
  const int nx = std::max(2, static_cast<int>(std::ceil((hull.x1 - hull.x0) / resolution)));
  const int ny = std::max(2, static_cast<int>(std::ceil((hull.y1 - hull.y0) / resolution)));
  const double hx = (hull.x1 - hull.x0) / nx;
  const double hy = (hull.y1 - hull.y0) / ny;
  long long cnt = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Vec2 p{hull.x0 + (i + 0.5) * hx, hull.y0 + (j + 0.5) * hy};
      if (inside(p)) ++cnt;
    }
  }
  return static_cast<double>(cnt) * hx * hy;
}

Domain make_channel(double length, double height, double rho0, double E,
                    const std::function<double(double)>& bottom_profile,
                    int chart_samples) {
  Domain d;
  d.rho0 = rho0;
  d.E = E;

  auto sample_profile = [&](const std::function<double(double)>& f, double c0,
                            double hw, int n) {
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) {
      const double u = -hw + 2.0 * hw * i / (n - 1);
      s[i] = f(c0 + u);
    }
    return s;
  };

  // Bottom graph: frame at the channel mid-bottom, n_hat = +y (interior above).
  BoundaryChart bottom;
  bottom.name = "bottom";
  bottom.frame = {Vec2{0.5 * length, 0.0}, Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
  bottom.half_width = 0.5 * length;
  bottom.phi = sample_profile(bottom_profile, 0.5 * length, bottom.half_width,
                              chart_samples);
  bottom.accessible = false;

  // Top wall: interior below, so n_hat = -y and the profile is flat.
  BoundaryChart top;
  top.name = "top";
  top.frame = {Vec2{0.5 * length, height}, Vec2{1.0, 0.0}, Vec2{0.0, -1.0}};
  top.half_width = 0.5 * length;
  top.phi.assign(chart_samples, 0.0);

  BoundaryChart left;
  left.name = "left";
  left.frame = {Vec2{0.0, 0.5 * height}, Vec2{0.0, 1.0}, Vec2{1.0, 0.0}};
  left.half_width = 0.5 * height;
  left.phi.assign(chart_samples, 0.0);

  BoundaryChart right;
  right.name = "right";
  right.frame = {Vec2{length, 0.5 * height}, Vec2{0.0, 1.0}, Vec2{-1.0, 0.0}};
  right.half_width = 0.5 * height;
  right.phi.assign(chart_samples, 0.0);

  d.charts = {bottom, top, left, right};
  d.sigma_chart = 1;

  double phi_min = 0.0;
  double phi_max = 0.0;
  for (double v : bottom.phi) {
    phi_min = std::min(phi_min, v);
    phi_max = std::max(phi_max, v);
  }
  d.hull = {0.0, length, phi_min, height};
  // The chart band must cover the oscillation of the bottom graph so the
  // bulk box and the charts agree on membership near the boundary.
  d.chart_band = std::max(0.25 * std::min(length, height),
                          2.0 * (phi_max - phi_min));
  Box2 box{0.0, length, phi_min, height};
  d.bulk = [box](Vec2 p) { return box.contains(p); };
  d.M = (length * height) / std::pow(rho0, 2) + 1.0;
  return d;
}

Domain make_disk(Vec2 center, double radius, double rho0, double E,
                 int n_charts, int chart_samples) {
  Domain d;
  d.rho0 = rho0;
  d.E = E;
  const double pi = 3.14159265358979323846;
  // Footprints overlap: each chart spans a bit more than its share of arc.
  const double hw = 1.25 * pi * radius / n_charts;
  for (int k = 0; k < n_charts; ++k) {
    const double th = 2.0 * pi * k / n_charts;
    BoundaryChart c;
    c.name = "arc" + std::to_string(k);
    Vec2 n_in{-std::cos(th), -std::sin(th)};
    Vec2 t{-std::sin(th), std::cos(th)};
    c.frame = {center + radius * Vec2{std::cos(th), std::sin(th)}, t, n_in};
    c.half_width = hw;
    c.phi.resize(chart_samples);
    for (int i = 0; i < chart_samples; ++i) {
      const double u = -hw + 2.0 * hw * i / (chart_samples - 1);
      // Height of the circle above the tangent line at distance u.
      c.phi[i] = radius - std::sqrt(std::max(0.0, radius * radius - u * u));
    }
    d.charts.push_back(c);
  }
  d.sigma_chart = 0;
  d.hull = {center.x - radius, center.x + radius, center.y - radius,
            center.y + radius};
  d.chart_band = 0.5 * radius;
  d.bulk = [center, radius](Vec2 p) { return norm(p - center) <= radius; };
  d.M = pi * radius * radius / (rho0 * rho0) + 1.0;
  return d;
}

Domain make_box(Box2 b, double rho0, double E) {
  Domain d = make_channel(b.x1 - b.x0, b.y1 - b.y0, rho0, E,
                          [](double) { return 0.0; });
  const Vec2 off{b.x0, b.y0};
  for (auto& c : d.charts) c.frame.origin = c.frame.origin + off;
  d.hull = {d.hull.x0 + off.x, d.hull.x1 + off.x, d.hull.y0 + off.y,
            d.hull.y1 + off.y};
  auto inner = std::move(d.bulk);
  d.bulk = [inner, off](Vec2 p) { return inner(p - off); };
  return d;
}

Domain build_graph_domain(const std::vector<ChartProfile>& profiles,
                          double rho0, double E, double slack, double height) {
  if (profiles.empty()) fail("ChartViolation", "no chart profiles supplied");
  const auto& p = profiles.front();
  if (p.u.size() != p.phi.size() || p.u.size() < 3) {
    fail("ChartViolation", "chart '" + p.id + "': malformed samples");
  }

  for (const auto& prof : profiles) {
    BoundaryChart c;
    c.name = prof.id;
    c.half_width = 0.5 * (prof.u.back() - prof.u.front());
    c.phi = prof.phi;
    for (double v : prof.phi) {
      if (!std::isfinite(v)) {
        fail("ChartViolation", "chart '" + prof.id + "': non-finite sample");
      }
    }
    const double nrm = c.c11_norm(rho0);
    if (nrm > E * rho0 * (1.0 + slack)) {
      // Identify which norm term overflows for the error message.
      const double h = c.du();
      double sup = 0.0, sup1 = 0.0, sup2 = 0.0;
      for (size_t i = 0; i < c.phi.size(); ++i) {
        sup = std::max(sup, std::abs(c.phi[i]));
        if (i + 1 < c.phi.size())
          sup1 = std::max(sup1, std::abs(c.phi[i + 1] - c.phi[i]) / h);
        if (i > 0 && i + 1 < c.phi.size())
          sup2 = std::max(sup2, std::abs(c.phi[i + 1] - 2 * c.phi[i] + c.phi[i - 1]) / (h * h));
      }
      std::string term = "sup";
      if (rho0 * sup1 >= sup && rho0 * sup1 >= rho0 * rho0 * sup2) term = "gradient";
      if (rho0 * rho0 * sup2 > sup && rho0 * rho0 * sup2 > rho0 * sup1) term = "curvature";
      fail("ChartViolation",
           "chart '" + prof.id + "': C^{1,1} norm " + std::to_string(nrm) +
               " exceeds E*rho0 = " + std::to_string(E * rho0) +
               " (dominant term: " + term + ")");
    }
    const int mid = static_cast<int>(c.phi.size()) / 2;
    if (std::abs(c.phi[mid]) > slack + 1e-12) {
      fail("ChartViolation", "chart '" + prof.id + "': phi(0) != 0");
    }
  }

  // Assemble as a channel with the first profile as the inaccessible bottom.
  const double length = p.u.back() - p.u.front();
  if (height <= 0.0) height = 2.0 * rho0 * std::max(2.0, E);
  CubicEval bottom{p.phi, p.u.front(), (p.u.back() - p.u.front()) /
                                           static_cast<double>(p.u.size() - 1)};
  const double off = p.u.front();
  Domain d = make_channel(length, height, rho0, E,
                          [bottom, off](double x) { return bottom.value(x + off); });

  // The measurement portion must keep distance rho0 from the inaccessible
  // part; the top wall must be far enough away.
  double phi_max = 0.0;
  for (double v : p.phi) phi_max = std::max(phi_max, v);
  if (height - phi_max < rho0) {
    fail("EmptyAccessiblePortion",
         "no accessible portion at distance rho0 from the inaccessible part");
  }
  d.M = d.measured_volume(std::min(length, height) / 256.0) / std::pow(rho0, d.dim);
  return d;
}

// ---------------------------------------------------------------------------
// Distances via exact Euclidean distance transform.

namespace {

// 1-D lower envelope of parabolas (Felzenszwalb & Huttenlocher). Unset cells
// carry a large finite sentinel rather than infinity so the intersection
// arithmetic stays well defined; any true set cell dominates the sentinel
// parabolas everywhere that matters.
void edt_1d(const std::vector<double>& f, std::vector<double>* out) {
  const int n = static_cast<int>(f.size());
  out->assign(n, 0.0);
  std::vector<int> v(n, 0);
  std::vector<double> z(n + 1, 0.0);
  const double inf = std::numeric_limits<double>::infinity();
  int k = 0;
  v[0] = 0;
  z[0] = -inf;
  z[1] = inf;
  for (int q = 1; q < n; ++q) {
    const double qq = static_cast<double>(q) * q;
    double s = 0.0;
    while (true) {
      const double vv = static_cast<double>(v[k]) * v[k];
      s = ((f[q] + qq) - (f[v[k]] + vv)) / (2.0 * q - 2.0 * v[k]);
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double d = q - v[k];
    (*out)[q] = d * d + f[v[k]];
  }
}

constexpr double kUnsetCell = 1e18;

}  // namespace

void squared_distance_transform(const std::vector<unsigned char>& mask,
                                int nx, int ny, std::vector<double>* d2) {
  d2->assign(static_cast<size_t>(nx) * ny, kUnsetCell);
  for (size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) (*d2)[i] = 0.0;
  }
  std::vector<double> col(ny), colo(ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) col[j] = (*d2)[static_cast<size_t>(j) * nx + i];
    edt_1d(col, &colo);
    for (int j = 0; j < ny; ++j) (*d2)[static_cast<size_t>(j) * nx + i] = colo[j];
  }
  std::vector<double> row(nx), rowo(nx);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) row[i] = (*d2)[static_cast<size_t>(j) * nx + i];
    edt_1d(row, &rowo);
    for (int i = 0; i < nx; ++i) (*d2)[static_cast<size_t>(j) * nx + i] = rowo[i];
  }
}

namespace {

struct SampledPair {
  int nx = 0, ny = 0;
  double h = 0.0;
  Box2 box;
  std::vector<unsigned char> in1, in2;
};

SampledPair sample_pair(const Domain& om1, const Domain& om2, double resolution,
                        const std::optional<Box2>& window) {
  if (resolution <= 0.0) fail("DegenerateDomain", "resolution must be positive");
  Box2 b;
  if (window) {
    b = *window;
  } else {
    b.x0 = std::min(om1.hull.x0, om2.hull.x0) - 2.0 * resolution;
    b.x1 = std::max(om1.hull.x1, om2.hull.x1) + 2.0 * resolution;
    b.y0 = std::min(om1.hull.y0, om2.hull.y0) - 2.0 * resolution;
    b.y1 = std::max(om1.hull.y1, om2.hull.y1) + 2.0 * resolution;
  }
  SampledPair s;
  s.box = b;
  s.h = resolution;
  s.nx = std::max(2, static_cast<int>(std::ceil((b.x1 - b.x0) / resolution)) + 1);
  s.ny = std::max(2, static_cast<int>(std::ceil((b.y1 - b.y0) / resolution)) + 1);
  s.in1.resize(static_cast<size_t>(s.nx) * s.ny);
  s.in2.resize(static_cast<size_t>(s.nx) * s.ny);
  for (int j = 0; j < s.ny; ++j) {
    for (int i = 0; i < s.nx; ++i) {
      Vec2 p{b.x0 + i * resolution, b.y0 + j * resolution};
      const size_t id = static_cast<size_t>(j) * s.nx + i;
      s.in1[id] = om1.inside(p) ? 1 : 0;
      s.in2[id] = om2.inside(p) ? 1 : 0;
    }
  }
  return s;
}

bool any_set(const std::vector<unsigned char>& m) {
  for (auto v : m)
    if (v) return true;
  return false;
}

// Boundary cells: set cells with at least one unset 4-neighbor (or on the
// sampling window edge).
std::vector<unsigned char> boundary_of(const std::vector<unsigned char>& in,
                                       int nx, int ny) {
  std::vector<unsigned char> b(in.size(), 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const size_t id = static_cast<size_t>(j) * nx + i;
      if (!in[id]) continue;
      bool edge = (i == 0 || j == 0 || i == nx - 1 || j == ny - 1);
      if (!edge) {
        edge = !in[id - 1] || !in[id + 1] || !in[id - nx] || !in[id + nx];
      }
      if (edge) b[id] = 1;
    }
  }
  return b;
}

double directed_max(const std::vector<unsigned char>& from,
                    const std::vector<double>& d2_to, double h) {
  double m = 0.0;
  for (size_t i = 0; i < from.size(); ++i) {
    if (from[i]) m = std::max(m, d2_to[i]);
  }
  return std::sqrt(m) * h;
}

}  // namespace

double hausdorff_distance(const Domain& om1, const Domain& om2,
                          double resolution,
                          const std::optional<Box2>& window) {
  SampledPair s = sample_pair(om1, om2, resolution, window);
  if (!window && (!any_set(s.in1) || !any_set(s.in2))) {
    fail("DegenerateDomain", "empty sample set at this resolution");
  }
  std::vector<double> d2_1, d2_2;
  squared_distance_transform(s.in1, s.nx, s.ny, &d2_1);
  squared_distance_transform(s.in2, s.nx, s.ny, &d2_2);
  return std::max(directed_max(s.in1, d2_2, s.h), directed_max(s.in2, d2_1, s.h));
}

double modified_distance(const Domain& om1, const Domain& om2,
                         double resolution,
                         const std::optional<Box2>& window) {
  SampledPair s = sample_pair(om1, om2, resolution, window);
  if (!window && (!any_set(s.in1) || !any_set(s.in2))) {
    fail("DegenerateDomain", "empty sample set at this resolution");
  }
  std::vector<double> d2_1, d2_2;
  squared_distance_transform(s.in1, s.nx, s.ny, &d2_1);
  squared_distance_transform(s.in2, s.nx, s.ny, &d2_2);
  auto b1 = boundary_of(s.in1, s.nx, s.ny);
  auto b2 = boundary_of(s.in2, s.nx, s.ny);
  return std::max(directed_max(b1, d2_2, s.h), directed_max(b2, d2_1, s.h));
}

RelativeGraphReport relative_graph_report(const Domain& om1, const Domain& om2,
                                          double alpha, double d0_frac,
                                          double resolution) {
  if (std::abs(om1.rho0 - om2.rho0) > 1e-12 * om1.rho0 || om1.E != om2.E) {
    fail("NotRelativeGraphs", "domains must share rho0 and E");
  }
  RelativeGraphReport rep;
  rep.alpha = alpha;
  rep.d0 = d0_frac * om1.rho0;
  rep.r0 = om1.rho0 / (2.0 * om1.E);

  // Height of the boundary of `om` above the chart abscissa u in `frame`,
  // found by bisecting the membership test along the normal line.
  auto trace = [&](const Domain& om, const ChartFrame& frame, double u,
                   double span) -> std::optional<double> {
    const int k = 48;
    double lo = -span, hi = span;
    Vec2 plo = frame.to_world(u, lo), phi_ = frame.to_world(u, hi);
    bool ilo = om.inside(plo), ihi = om.inside(phi_);
    if (ilo == ihi) return std::nullopt;  // no crossing on this segment
    for (int it = 0; it < k; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (om.inside(frame.to_world(u, mid)) == ihi) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  const double span = 0.9 * std::min(om1.chart_band, om2.chart_band);
  double g0 = 0.0, g1sup = 0.0;
  double holder = 0.0;
  const int nu = std::max(8, static_cast<int>(std::ceil(rep.r0 / resolution)));
  for (const auto& c : om1.charts) {
    // Sample chart centers along the footprint, re-trace both boundaries in
    // a frame anchored at each center. Anchors stay a graph radius away from
    // the chart ends so corner neighborhoods (where the boundary turns) are
    // not forced into a single-frame graph.
    const double lo_u = -c.half_width + 2.05 * rep.r0;
    const double hi_u = c.half_width - 2.05 * rep.r0;
    if (hi_u <= lo_u) continue;
    const int nc = std::max(
        2, static_cast<int>(std::ceil((hi_u - lo_u) / rep.r0)) * 2 + 1);
    for (int a = 0; a < nc; ++a) {
      const double uc = lo_u + (hi_u - lo_u) * a / (nc - 1);
      ChartFrame f;
      f.origin = c.point_at(uc);
      Vec2 nu_out = c.outward_normal(uc);
      f.n_hat = -1.0 * nu_out;
      f.t_hat = Vec2{-f.n_hat.y, f.n_hat.x};
      const double r0 = rep.r0;
      std::vector<double> d(nu), dd(nu);
      std::vector<double> us(nu);
      for (int i = 0; i < nu; ++i) {
        const double u = -r0 + 2.0 * r0 * i / (nu - 1);
        auto h1 = trace(om1, f, u, span);
        auto h2 = trace(om2, f, u, span);
        if (!h1 || !h2) {
          fail("NotRelativeGraphs",
               "boundary of one domain has no graph near chart '" + c.name + "'");
        }
        us[i] = u;
        d[i] = *h2 - *h1;
      }
      for (int i = 0; i < nu; ++i) g0 = std::max(g0, std::abs(d[i]));
      const double du = us[1] - us[0];
      for (int i = 0; i + 1 < nu; ++i) dd[i] = (d[i + 1] - d[i]) / du;
      for (int i = 0; i + 1 < nu; ++i) g1sup = std::max(g1sup, std::abs(dd[i]));
      for (int i = 0; i + 1 < nu; ++i) {
        for (int j = i + 1; j + 1 < nu; j += std::max(1, (nu - i) / 16)) {
          const double dist = (j - i) * du;
          holder = std::max(holder,
                            std::abs(dd[j] - dd[i]) / std::pow(dist, alpha));
        }
      }
    }
  }
  rep.relative_graphs = true;
  rep.gamma0 = g0;
  rep.gamma1_alpha = g0 + rep.r0 * g1sup + std::pow(rep.r0, 1.0 + alpha) * holder;
  rep.within_d0 = hausdorff_distance(om1, om2, resolution) <= rep.d0;
  return rep;
}

}  // namespace wavescope
