#pragma once

#include <functional>
#include <vector>

#include "wavescope/anisotropy.hpp"
#include "wavescope/boundary_data.hpp"
#include "wavescope/geometry.hpp"

namespace wavescope {

/// Uniform space-time grid specification. nx, ny are point counts including
/// the box edges; dt is derived from the CFL rule dt = c_cfl * h * sqrt(lambda)
/// and rounded down so T is an integer number of steps.
struct GridSpec {
  Box2 box;
  int nx = 65;
  int ny = 65;
  double c_cfl = 0.5;

  double hx() const { return (box.x1 - box.x0) / (nx - 1); }
  double hy() const { return (box.y1 - box.y0) / (ny - 1); }
};

/// Node roles on the embedded-boundary grid.
enum class NodeKind : unsigned char { exterior = 0, interior = 1, ghost = 2 };

/// Precomputed Dirichlet imposition for one ghost node: boundary crossing
/// point, crossing fraction s measured from the interior neighbor, and the
/// neighbor index. s = 1 means the node sits on the boundary itself.
struct GhostStencil {
  int node = -1;
  int interior_neighbor = -1;
  double s = 1.0;
  Vec2 crossing;
};

/// Full space-time solution history of the initial boundary value problem.
struct WaveField {
  GridSpec grid;
  double dt = 0.0;
  int steps = 0;
  std::vector<NodeKind> kind;            // nx*ny
  std::vector<GhostStencil> ghosts;
  std::vector<double> values;            // (steps+1) * ny * nx, 0 outside

  int nx() const { return grid.nx; }
  int ny() const { return grid.ny; }
  size_t layer_size() const { return static_cast<size_t>(grid.nx) * grid.ny; }
  const double* layer(int m) const { return values.data() + layer_size() * m; }
  double* layer(int m) { return values.data() + layer_size() * m; }
  double time_of(int m) const { return dt * m; }

  /// Bilinear interpolation of layer m at point p.
  double sample(int m, Vec2 p) const;
};

/// Extra inputs for verification runs: initial data and a forcing term for
/// the homogeneous-Dirichlet problem. The main pipeline leaves all unset.
struct SolveExtras {
  std::function<double(Vec2)> u0;
  std::function<double(Vec2)> v0;
  std::function<double(Vec2, double)> forcing;
};

/// Explicit leapfrog solution of
///   u_tt = div(A grad u) + F  on  Omega x [0, T],
///   u = psi on the boundary (imposed on cut cells by one-dimensional
///   interpolation along the grid line through the boundary crossing),
///   u(.,0) = u0, u_t(.,0) = v0 (zero unless supplied).
/// Throws CflViolation when the requested step violates the CFL rule and
/// NonconformingBoundary when the grid box does not cover the domain.
WaveField solve_ibvp(const Domain& domain, const AnisotropyField& A,
                     const BoundaryData& data, double T, const GridSpec& grid,
                     const SolveExtras& extras = {}, int threads = 1);

/// Discrete energy K(t_m) = sum over interior nodes of
/// (A grad u . grad u + u_t^2) hx hy with centered differences.
double energy(const WaveField& u, const AnisotropyField& A, int m);

/// The leapfrog invariant at the staggered level m + 1/2:
///   E = 1/2 ||(u^{m+1} - u^m)/dt||^2 + 1/2 a(u^m, u^{m+1})
/// with the face-based stiffness form a matching the update operator.
/// Conserved to round-off for homogeneous data and symmetric coefficients.
double discrete_energy(const WaveField& u, const AnisotropyField& A, int m);

/// Conormal flux trace A grad u . nu sampled on the measurement portion for
/// every time level, via second-order one-sided differences along the outward
/// normal plus the tangential derivative of the boundary data.
struct FluxTrace {
  std::vector<double> times;
  std::vector<double> arclength;
  std::vector<Vec2> points;
  std::vector<double> weights;   // dS per sample
  std::vector<double> values;    // times.size() x arclength.size(), row-major
  double value(int m, int i) const {
    return values[static_cast<size_t>(m) * arclength.size() + i];
  }
};

FluxTrace boundary_flux(const WaveField& u, const Domain& domain,
                        const AnisotropyField& A, const BoundaryData& data,
                        double ds = 0.0);

/// Flux mismatch scaled as the unique value that turns the measurement bound
/// into an equality:
///   eps = sqrt( 1/(T rho0^{n-3}) int_0^T int_Sigma |f1 - f2|^2 dS dt ).
double flux_mismatch_epsilon(const FluxTrace& f1, const FluxTrace& f2, double T,
                             double rho0, int dim = 2);

}  // namespace wavescope
