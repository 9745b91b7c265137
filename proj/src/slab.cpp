#include "geldg/slab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace geldg {

namespace {

inline bool time_in_slab(double t, double t_n, double t_np1) {
  const double lo = std::min(t_n, t_np1), hi = std::max(t_n, t_np1);
  const double slack = 1e-12 * (1.0 + hi - lo);
  return t >= lo - slack && t <= hi + slack;
}

}  // namespace

double SpaceTimeSlab::dynamic_edge(int e, double t) const {
  if (!time_in_slab(t, t_n, t_np1)) {
    throw std::invalid_argument("dynamic_edge: t outside slab");
  }
  return grid->edge(e) + (t - t_np1) * nu[e];
}

double SpaceTimeSlab::cell_width(int j, double t) const {
  if (!time_in_slab(t, t_n, t_np1)) {
    throw std::invalid_argument("cell_width: t outside slab");
  }
  const double w = grid->dx(j) + (nu[j] - nu[j + 1]) * (t_np1 - t);
  if (!(w > 0.0)) {
    throw std::runtime_error("cell_width: tangled cell " + std::to_string(j));
  }
  return w;
}

SpaceTimeSlab build_slab(const Grid1D& grid, const SpeedRule& rule,
                         double t_n, double dt) {
  if (dt == 0.0 || !std::isfinite(dt)) {
    throw std::invalid_argument("build_slab: dt must be nonzero and finite");
  }
  SpaceTimeSlab slab;
  slab.grid = &grid;
  slab.t_n = t_n;
  slab.t_np1 = t_n + dt;

  const int n = grid.n();
  slab.nu.resize(n + 1);
  slab.x_star.resize(n + 1);
  slab.alpha.resize(n);
  slab.ext.resize(n);

  for (int e = 0; e <= n; ++e) {
    const double nu_e = rule.edge_speed(grid.edge(e), slab.t_np1);
    if (!std::isfinite(nu_e)) {
      throw std::runtime_error("build_slab: nonfinite edge speed");
    }
    slab.nu[e] = nu_e;
    slab.x_star[e] = grid.edge(e) - nu_e * dt;
  }
  for (int j = 0; j < n; ++j) {
    const double a_j = rule.cell_speed(grid.center(j), slab.t_np1);
    if (!std::isfinite(a_j)) {
      throw std::runtime_error("build_slab: nonfinite cell speed");
    }
    slab.alpha[j] = a_j;
    slab.ext[j] = {
        std::min(grid.edge(j), slab.x_star[j] + a_j * dt),
        std::max(grid.edge(j + 1), slab.x_star[j + 1] + a_j * dt)};
    // Widths are linear in t, so positivity at both ends covers the slab.
    const double w_star = slab.x_star[j + 1] - slab.x_star[j];
    if (!(w_star > 0.0)) {
      throw std::runtime_error(
          "build_slab: mesh tangling in cell " + std::to_string(j) +
          " (upstream width " + std::to_string(w_star) +
          "); dt too large for the edge-speed spread");
    }
  }
  return slab;
}

}  // namespace geldg
