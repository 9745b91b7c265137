#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "geldg/grid.hpp"

namespace geldg {

// Scalar velocity sample a(x, t).
using Velocity = std::function<double(double, double)>;

// Slopes of the space-time partition: nu at cell edges, alpha per cell.
// Both are sampled at the step's target time only.
struct SpeedRule {
  Velocity edge_speed;  // nu_{j+1/2} = edge_speed(x_{j+1/2}, t_target)
  Velocity cell_speed;  // alpha_j    = cell_speed(x_j, t_target)

  static SpeedRule from_velocity(const Velocity& a) { return {a, a}; }
};

// One time step's partition: straight edge lines
//   xt_{j+1/2}(t) = x_{j+1/2} + (t - t_np1) * nu_{j+1/2},
// upstream edges x_star = xt(t_n), and per-cell extension intervals that
// cover the translated test polynomials. dt may be negative (reverse step).
struct SpaceTimeSlab {
  const Grid1D* grid = nullptr;
  double t_n = 0.0, t_np1 = 0.0;
  std::vector<double> nu;                         // n+1 edge slopes
  std::vector<double> alpha;                      // n cell slopes
  std::vector<double> x_star;                     // n+1 upstream edges
  std::vector<std::pair<double, double>> ext;     // n extension intervals

  double dt() const { return t_np1 - t_n; }

  double dynamic_edge(int e, double t) const;
  double cell_width(int j, double t) const;
  // Width of the upstream cell I*_j.
  double upstream_width(int j) const { return x_star[j + 1] - x_star[j]; }
};

SpaceTimeSlab build_slab(const Grid1D& grid, const SpeedRule& rule,
                         double t_n, double dt);

}  // namespace geldg
