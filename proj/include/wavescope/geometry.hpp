#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wavescope/errors.hpp"

namespace wavescope {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Box2 {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  bool contains(Vec2 p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
};

/// Rigid chart frame: world point = origin + u * t_hat + v * n_hat,
/// with n_hat pointing into the domain (the graph opens toward +v).
struct ChartFrame {
  Vec2 origin;
  Vec2 t_hat{1.0, 0.0};
  Vec2 n_hat{0.0, 1.0};
  Vec2 to_world(double u, double v) const {
    return origin + u * t_hat + v * n_hat;
  }
  void to_local(Vec2 p, double* u, double* v) const {
    Vec2 d = p - origin;
    *u = dot(d, t_hat);
    *v = dot(d, n_hat);
  }
};

/// One local graph chart of the boundary: a sampled profile phi on
/// |u| <= half_width, interpolated with cubic (Catmull-Rom) splines so that
/// first and second derivatives are available for norm checks, normals and
/// surface weights.
struct BoundaryChart {
  std::string name;
  ChartFrame frame;
  double half_width = 0.0;     // footprint radius in the u coordinate
  std::vector<double> phi;     // uniform samples on [-half_width, half_width]
  bool accessible = true;

  double du() const {
    return 2.0 * half_width / static_cast<double>(phi.size() - 1);
  }
  double eval(double u) const;        // interpolated profile
  double eval_d1(double u) const;     // d(phi)/du
  double eval_d2(double u) const;     // d2(phi)/du2

  Vec2 point_at(double u) const { return frame.to_world(u, eval(u)); }
  /// Outward unit normal of the graph {v = phi(u)} with interior on v > phi.
  Vec2 outward_normal(double u) const;
  /// Surface element weight per unit u: sqrt(1 + phi'(u)^2).
  double surface_weight(double u) const;

  /// Dimensionally normalized C^{1,1} norm of the profile measured by finite
  /// differences on the samples:
  ///   ||phi||_inf + rho0 ||phi'||_inf + rho0^2 ||phi''||_inf.
  double c11_norm(double rho0) const;
};

struct BoundarySample {
  Vec2 point;
  Vec2 outward_normal;
  double weight = 0.0;      // dS contribution
  double arclength = 0.0;   // running coordinate along the chart
  int chart = -1;
};

/// A bounded planar domain described by a bulk membership test refined by
/// graph charts near the boundary. Inside(x) requires the bulk test to pass
/// and every chart whose cylinder covers x to see x above its graph. The
/// constructors keep the two representations coherent.
struct Domain {
  int dim = 2;
  double rho0 = 1.0;
  double E = 1.0;
  double M = 0.0;   // volume bound |Omega| <= M rho0^n, measured on build
  std::vector<BoundaryChart> charts;
  int sigma_chart = -1;            // chart carrying the measurement portion
  Box2 hull;                        // bounding box of the closure
  std::function<bool(Vec2)> bulk;  // coarse membership away from charts
  double chart_band = 0.0;         // charts are authoritative within this v-band

  bool inside(Vec2 p) const;
  /// Uniform boundary sampling of every chart, ds is the target spacing.
  std::vector<BoundarySample> boundary_samples(double ds) const;
  /// Samples restricted to the measurement portion.
  std::vector<BoundarySample> sigma_samples(double ds) const;
  double measured_volume(double resolution) const;
};

/// Straight channel 0 < x < length, phi_bottom(x) < y < height. The bottom
/// graph is the inaccessible portion; top and side walls are accessible and
/// the measurement portion sits on the top wall.
Domain make_channel(double length, double height, double rho0, double E,
                    const std::function<double(double)>& bottom_profile,
                    int chart_samples = 257);

/// Disk of radius r charted by overlapping boundary graphs.
Domain make_disk(Vec2 center, double radius, double rho0, double E,
                 int n_charts = 16, int chart_samples = 65);

/// Axis-aligned box with four flat charts.
Domain make_box(Box2 b, double rho0, double E);

/// Raw profile samples for one chart, as ingested from CSV.
struct ChartProfile {
  std::string id;
  std::vector<double> u;    // uniform ascending samples
  std::vector<double> phi;
};

/// Builds a channel-type domain from bottom-graph profile samples after
/// validating each profile against the C^{1,1} bound E*rho0 (finite
/// differences, with a configurable relative slack). Throws ChartViolation
/// naming the chart and the offending norm term, or EmptyAccessiblePortion
/// when no measurement portion at distance rho0 from the inaccessible part
/// exists. height = 0 picks 2 rho0 max(2, E).
Domain build_graph_domain(const std::vector<ChartProfile>& profiles,
                          double rho0, double E, double slack = 1e-9,
                          double height = 0.0);

/// Hausdorff distance between the sampled closures, computed on a shared
/// grid of pitch `resolution` via exact Euclidean distance transforms.
/// Error is bounded by 2 * resolution. `window` restricts the computation
/// when the caller knows the symmetric difference is localized.
double hausdorff_distance(const Domain& om1, const Domain& om2,
                          double resolution,
                          const std::optional<Box2>& window = std::nullopt);

/// Same sampling machinery with the sup taken over boundary samples only.
double modified_distance(const Domain& om1, const Domain& om2,
                         double resolution,
                         const std::optional<Box2>& window = std::nullopt);

struct RelativeGraphReport {
  bool relative_graphs = false;
  double gamma0 = 0.0;       // sup of |phi_1 - phi_2| over common charts
  double gamma1_alpha = 0.0; // C^{1,alpha} norm of the difference
  double alpha = 0.5;
  double r0 = 0.0;           // common graph radius used
  bool within_d0 = false;    // d_H <= d0 flag
  double d0 = 0.0;
};

/// Re-traces both boundaries in the chart frames of om1 and reports the
/// graph-comparison norms gamma0 and gamma_{1,alpha}. Throws
/// NotRelativeGraphs when some boundary point of om1 has no graph
/// representation of om2 within the common radius.
RelativeGraphReport relative_graph_report(const Domain& om1, const Domain& om2,
                                          double alpha = 0.5,
                                          double d0_frac = 0.1,
                                          double resolution = 1e-3);

/// Exact squared Euclidean distance transform (Felzenszwalb-Huttenlocher) of
/// a mask on a uniform grid; d2[i] is the squared grid distance from cell i
/// to the nearest set cell. Exposed for tests.
void squared_distance_transform(const std::vector<unsigned char>& mask,
                                int nx, int ny, std::vector<double>* d2);

}  // namespace wavescope
