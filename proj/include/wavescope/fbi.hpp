#pragma once

#include <complex>
#include <vector>

#include "wavescope/anisotropy.hpp"
#include "wavescope/wave.hpp"

namespace wavescope {

/// Gaussian-windowed complex time transform of a wave history,
///   U(x, y) = sqrt(mu/2pi) int_0^T exp(-mu (iy + tau - t)^2 / 2) u(x, t) dt,
/// evaluated by composite Gauss-Legendre quadrature of the exact complex
/// kernel. d2y holds the y-second-derivative obtained by differentiating the
/// kernel analytically (the transform is entire in y), which removes grid
/// differentiation from the downstream elliptic-identity check.
struct FbiField {
  double mu = 0.0;
  double tau = 0.0;
  double T_horizon = 0.0;
  GridSpec grid;                    // spatial grid shared with the wave field
  std::vector<double> y;            // y samples
  std::vector<NodeKind> kind;       // copied node classification
  std::vector<std::complex<double>> values;  // y-major: [iy][j][i]
  std::vector<std::complex<double>> d2y;

  size_t layer_size() const { return static_cast<size_t>(grid.nx) * grid.ny; }
  std::complex<double> at(int iy, size_t node) const {
    return values[layer_size() * iy + node];
  }
};

struct FbiOptions {
  int nodes_per_panel = 16;
  long long node_cap = 4'000'000;  // QuadratureUnderResolved above this
  long long min_panels = 0;        // floor for convergence references
  bool with_d2y = true;
  int threads = 1;
};

/// Transform of the full wave history. Requires mu T^2 >= 1 and
/// tau in (0, T/2].
FbiField fbi_transform(const WaveField& u, double mu, double tau,
                       const std::vector<double>& y_grid,
                       const FbiOptions& opt = {});

/// Transform of a scalar time signal (quadrature-accuracy harness and
/// concentration tests).
std::complex<double> fbi_transform_signal(const std::function<double(double)>& u,
                                          double T, double mu, double tau,
                                          double y, const FbiOptions& opt = {});

/// Source term produced by the hyperbolic-to-elliptic conversion:
///   f(x, y) = sqrt(mu/2pi) exp(-mu (iy+tau-T)^2/2)
///             (u_t(x,T) - mu (iy+tau-T) u(x,T)).
/// Final-time slices come from the last wave layers (second-order one-sided
/// u_t).
std::vector<std::complex<double>> fbi_source(const WaveField& u, double mu,
                                             double tau, double y);

/// Discrete L2 norm of  d2y U + div(A grad_x U) - f  over the interior
/// subgrid (nodes whose full stencil is interior), one value per y sample,
/// plus the aggregate. Throws GridTooCoarse when no interior subgrid exists.
struct EllipticResidual {
  std::vector<double> per_y;
  double total = 0.0;
  long long nodes = 0;
};

EllipticResidual elliptic_residual(const FbiField& U, const AnisotropyField& A,
                                   const WaveField& u, bool zero_source = false);

/// Envelope check of the derivative bound
///   |D^j U(x,y)| <= c mu^{1/4} e^{mu y^2/2} (int_0^T |D^j u|^2 dt)^{1/2}
/// for j = 0, 1, 2; reports the largest observed c per j.
struct GrowthReport {
  double c_observed[3] = {0.0, 0.0, 0.0};
};

GrowthReport fbi_growth_check(const FbiField& U, const WaveField& u);

}  // namespace wavescope
