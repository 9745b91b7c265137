#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace geldg {

enum class BcKind { periodic, inflow };

// Fixed background 1D grid: edges x_{1/2} < ... < x_{N+1/2}.
struct Grid1D {
  std::vector<double> edges;
  BcKind bc = BcKind::periodic;
  bool uniform = false;

  static Grid1D make_uniform(double xa, double xb, int n,
                             BcKind bc = BcKind::periodic);
  static Grid1D from_edges(std::vector<double> edges,
                           BcKind bc = BcKind::periodic);

  int n() const { return static_cast<int>(edges.size()) - 1; }
  double xa() const { return edges.front(); }
  double xb() const { return edges.back(); }
  double length() const { return xb() - xa(); }
  double edge(int e) const { return edges[e]; }
  double dx(int j) const { return edges[j + 1] - edges[j]; }
  double center(int j) const { return 0.5 * (edges[j] + edges[j + 1]); }
  double dx_min() const;

  // Maps x into [xa, xb) for periodic grids; unchanged otherwise.
  double wrap(double x) const;
  // Cell index containing x (after wrap); throws for out-of-domain
  // coordinates on non-periodic grids.
  int cell_of(double x) const;
  // Reference coordinate of x within cell j: r = (x - x_j) / dx_j.
  double ref_coord(int j, double x) const {
    return (x - center(j)) / dx(j);
  }
};

inline Grid1D Grid1D::make_uniform(double xa, double xb, int n, BcKind bc) {
  if (!(xb > xa) || n < 1) throw std::invalid_argument("Grid1D: bad extent");
  Grid1D g;
  g.bc = bc;
  g.uniform = true;
  g.edges.resize(n + 1);
  const double h = (xb - xa) / n;
  for (int e = 0; e <= n; ++e) g.edges[e] = xa + e * h;
  g.edges[n] = xb;
  return g;
}

inline Grid1D Grid1D::from_edges(std::vector<double> edges, BcKind bc) {
  if (edges.size() < 2) throw std::invalid_argument("Grid1D: need >= 2 edges");
  for (size_t e = 1; e < edges.size(); ++e) {
    if (!(edges[e] > edges[e - 1])) {
      throw std::invalid_argument("Grid1D: edges must be strictly increasing");
    }
  }
  Grid1D g;
  g.bc = bc;
  g.edges = std::move(edges);
  return g;
}

inline double Grid1D::dx_min() const {
  double h = dx(0);
  for (int j = 1; j < n(); ++j) h = std::min(h, dx(j));
  return h;
}

inline double Grid1D::wrap(double x) const {
  if (bc != BcKind::periodic) return x;
  const double l = length();
  double y = std::fmod(x - xa(), l);
  if (y < 0) y += l;
  return xa() + y;
}

inline int Grid1D::cell_of(double x) const {
  double y = wrap(x);
  if (y < xa() || y > xb()) {
    throw std::out_of_range("Grid1D: coordinate outside domain");
  }
  if (uniform) {
    const double h = length() / n();
    int j = static_cast<int>(std::floor((y - xa()) / h));
    if (j < 0) j = 0;
    if (j >= n()) j = n() - 1;
    return j;
  }
  int lo = 0, hi = n() - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (y < edges[mid + 1]) hi = mid; else lo = mid + 1;
  }
  return lo;
}

}  // namespace geldg
