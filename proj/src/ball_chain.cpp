#include "wavescope/ball_chain.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <boost/multiprecision/cpp_int.hpp>

namespace wavescope {

namespace {
using Rational = boost::multiprecision::cpp_rational;
}

double matched_cone_slope(double varsigma) {
  const double sg = 1.0 - varsigma / 12.0;
  return std::sqrt(1.0 - sg * sg) / sg;
}

BallChain cone_ball_chain(double s, double L_s, double rho0, double varsigma,
                          int n_balls, int dim) {
  if (!(varsigma > 0.0 && varsigma <= 0.25)) {
    fail("ConeAngleOrder", "varsigma must lie in (0, 1/4]");
  }
  if (s <= 0.0 || L_s <= 0.0 || rho0 <= 0.0) {
    fail("ConeAngleOrder", "s, L_s, rho0 must be positive");
  }
  ConeParams c;
  c.s = s;
  c.L_s = L_s;
  c.varsigma = varsigma;
  c.sin_gamma1 = 1.0 - varsigma;
  c.sin_gamma2 = 1.0 - varsigma / 4.0;
  c.sin_gamma = 1.0 / std::sqrt(1.0 + L_s * L_s);  // gamma = arctan(1/L_s)
  if (!(c.sin_gamma1 < c.sin_gamma2 && c.sin_gamma2 < c.sin_gamma)) {
    fail("ConeAngleOrder",
         "need sin(gamma_1) < sin(gamma_2) < sin(gamma); L_s too large for "
         "this varsigma");
  }
  c.chi = (1.0 - c.sin_gamma2) / (1.0 - c.sin_gamma1);
  c.l1 = (s * L_s * rho0 / 2.0) / (1.0 + c.sin_gamma);
  c.h = (c.sin_gamma - c.sin_gamma1) / (1.0 + c.sin_gamma);

  BallChain chain;
  chain.kind = BallChain::Kind::cone;
  chain.dim = dim;
  chain.cone = c;
  double lk = c.l1;
  for (int k = 0; k < n_balls; ++k) {
    std::vector<double> w(dim, 0.0);
    w[dim - 1] = lk;
    chain.centers.push_back(std::move(w));
    chain.small_radii.push_back(lk * c.sin_gamma1);
    chain.mid_radii.push_back(lk * c.sin_gamma2);
    chain.large_radii.push_back(lk * c.sin_gamma);
    lk *= c.chi;
  }
  return chain;
}

bool cone_nesting_exact(long long s_num, long long s_den, long long ls_num,
                        long long ls_den, long long rho0_num, long long rho0_den,
                        long long vs_num, long long vs_den, int k_max) {
  const Rational vs(vs_num, vs_den);
  const Rational L(ls_num, ls_den);
  const Rational s(s_num, s_den);
  const Rational rho0(rho0_num, rho0_den);
  if (vs <= 0 || vs > Rational(1, 4) || L <= 0 || s <= 0 || rho0 <= 0) return false;

  const Rational s1 = 1 - vs;         // sin(gamma_1)
  const Rational s2 = 1 - vs / 4;     // sin(gamma_2)
  // Angle order: gamma_1 < gamma_2 < gamma. The last comparison avoids the
  // irrational sin(gamma) via sin^2(gamma) = 1/(1+L^2), i.e.
  // s2^2 (1 + L^2) < 1.
  if (!(s1 < s2)) return false;
  if (!(s2 * s2 * (1 + L * L) < 1)) return false;

  const Rational chi = (1 - s2) / (1 - s1);

  // All centers and radii scale by chi^{k-1}; the per-k containments reduce
  // to scale-free rational inequalities:
  //   B_{r_{k+1}}(w_{k+1}) in B_{rho_k}(w_k):
  //     (l_k - l_{k+1}) + r_{k+1} <= rho_k  <=>  (1 - s2) <= chi (1 - s1),
  //   B_{rho_k} in B_{R_k}:  s2 <= sin(gamma)  (checked squared above),
  //   B_{R_k}(w_k) in cone:  lateral distance equals l_k sin(gamma) = R_k
  //     and the cap needs chi^{k-1} <= 1.
  // The k-dependence is rechecked explicitly below for robustness.
  Rational lk(1);  // l_k / l_1
  for (int k = 1; k <= k_max; ++k) {
    const Rational lk1 = lk * chi;
    const Rational center_gap = lk - lk1;  // |w_k - w_{k+1}| / l_1
    const Rational r_next = lk1 * s1;
    const Rational rho_k = lk * s2;
    if (!(center_gap + r_next <= rho_k)) return false;
    if (!(lk1 * s2 <= lk1)) return false;  // rho < l (ball stays off the apex)
    if (!(lk <= 1)) return false;          // cap: l_k + R_k <= l_1 (1 + sin g)
    lk = lk1;
  }
  return true;
}

namespace {

struct GridIndex {
  int nx = 0, ny = 0;
  double h = 0.0;
  Box2 box;
  Vec2 point(int i, int j) const {
    return {box.x0 + i * h, box.y0 + j * h};
  }
};

}  // namespace

BallChain path_ball_chain(const Domain& host, Vec2 start, Vec2 end, double r,
                          double grid_pitch) {
  if (r <= 0.0) fail("NotConnected", "ball radius must be positive");
  const double pitch = grid_pitch > 0.0 ? grid_pitch : r / 8.0;

  GridIndex g;
  g.box = host.hull;
  g.h = pitch;
  g.nx = std::max(2, static_cast<int>(std::ceil((g.box.x1 - g.box.x0) / pitch)) + 1);
  g.ny = std::max(2, static_cast<int>(std::ceil((g.box.y1 - g.box.y0) / pitch)) + 1);

  // r-interior via the distance transform of the complement.
  std::vector<unsigned char> outside(static_cast<size_t>(g.nx) * g.ny, 0);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const size_t id = static_cast<size_t>(j) * g.nx + i;
      outside[id] = host.inside(g.point(i, j)) ? 0 : 1;
    }
  }
  std::vector<double> d2;
  squared_distance_transform(outside, g.nx, g.ny, &d2);
  std::vector<unsigned char> interior(outside.size(), 0);
  const double rr = (r / g.h) * (r / g.h);
  for (size_t i = 0; i < interior.size(); ++i) interior[i] = d2[i] > rr ? 1 : 0;

  auto nearest_node = [&](Vec2 p) -> int {
    int best = -1;
    double bd = 0.0;
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const size_t id = static_cast<size_t>(j) * g.nx + i;
        if (!interior[id]) continue;
        const double d = norm(g.point(i, j) - p);
        if (best < 0 || d < bd) {
          best = static_cast<int>(id);
          bd = d;
        }
      }
    }
    return best;
  };
  const int a = nearest_node(start);
  const int b = nearest_node(end);
  if (a < 0 || b < 0) fail("NotConnected", "no r-interior at this inset");

  if (norm(start - end) < 1e-12) {
    BallChain single;
    single.kind = BallChain::Kind::path;
    single.centers.push_back({start.x, start.y});
    single.small_radii.push_back(r / 4.0);
    single.mid_radii.push_back(3.0 * r / 4.0);
    single.large_radii.push_back(r);
    return single;
  }

  // BFS shortest path with fixed lexicographic neighbor order (W, E, S, N)
  // for deterministic tie-breaking.
  std::vector<int> prev(interior.size(), -2);
  std::queue<int> q;
  q.push(a);
  prev[a] = -1;
  const int moves[4] = {-1, +1, -g.nx, +g.nx};
  while (!q.empty() && prev[b] == -2) {
    const int cur = q.front();
    q.pop();
    const int ci = cur % g.nx;
    for (int m = 0; m < 4; ++m) {
      const int nxt = cur + moves[m];
      if (nxt < 0 || nxt >= static_cast<int>(interior.size())) continue;
      if (m < 2 && (nxt / g.nx) != (cur / g.nx)) continue;  // row wrap
      if (m < 2 && std::abs(nxt % g.nx - ci) != 1) continue;
      if (!interior[nxt] || prev[nxt] != -2) continue;
      prev[nxt] = cur;
      q.push(nxt);
    }
  }
  if (prev[b] == -2) fail("NotConnected", "start and end separated at inset r");

  std::vector<Vec2> path;
  for (int cur = b; cur != -1; cur = prev[cur]) {
    path.push_back(g.point(cur % g.nx, cur / g.nx));
  }
  std::reverse(path.begin(), path.end());
  path.front() = start;  // anchor the ends at the requested points
  path.back() = end;

  // Walk the polyline placing centers: from the current center, the next one
  // is the LAST point of the path at distance exactly r/2 (scanning from the
  // end), which keeps the r/4 balls pairwise disjoint.
  BallChain chain;
  chain.kind = BallChain::Kind::path;
  auto push = [&](Vec2 p) {
    chain.centers.push_back({p.x, p.y});
    chain.small_radii.push_back(r / 4.0);
    chain.mid_radii.push_back(3.0 * r / 4.0);
    chain.large_radii.push_back(r);
  };
  Vec2 cur = start;
  push(cur);
  const double step = r / 2.0;
  while (norm(end - cur) > step) {
    Vec2 next = cur;
    bool found = false;
    for (size_t i = path.size() - 1; i >= 1; --i) {
      const Vec2 p1 = path[i], p0 = path[i - 1];
      const double d1 = norm(p1 - cur), d0 = norm(p0 - cur);
      if ((d0 - step) * (d1 - step) <= 0.0 && std::max(d0, d1) > 0.0) {
        // Bisect the segment for the crossing |p - cur| = r/2.
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          const Vec2 pm = p0 + mid * (p1 - p0);
          if ((norm(pm - cur) - step) * (d1 - step) <= 0.0) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        next = p0 + 0.5 * (lo + hi) * (p1 - p0);
        found = true;
        break;
      }
    }
    if (!found) break;
    cur = next;
    push(cur);
    if (chain.length() > 100000) fail("NotConnected", "chain failed to terminate");
  }
  if (norm(end - cur) > 1e-12) push(end);
  return chain;
}

bool chain_length_within_bound(const BallChain& chain, double M, double rho0,
                               double r, double c_n) {
  const int n = chain.dim;
  if (c_n <= 0.0) {
    const double pi = 3.14159265358979323846;
    const double omega_n = (n == 2) ? pi : 4.0 * pi / 3.0;
    c_n = std::pow(4.0, n) / omega_n;
  }
  const double sigma = r / rho0;
  return chain.length() <= c_n * M * std::pow(sigma, -n) + 1.0;
}

}  // namespace wavescope
