#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "geldg/grid.hpp"
#include "geldg/scheme.hpp"

namespace geldg {

using Velocity2D = std::function<double(double, double, double)>;  // (x,y,t)

// Tensor-product nodal representation on a rectangular mesh: each cell A_ij
// stores values at the (k+1)^2 tensor Gauss nodes. Per-line nodal<->modal
// conversion is exact for Q^k data.
struct TensorField2D {
  Grid1D gx, gy;
  int k = 0;
  std::vector<double> vals;  // [i][j][p][q]

  TensorField2D() = default;
  TensorField2D(Grid1D grid_x, Grid1D grid_y, int degree);

  int nx() const { return gx.n(); }
  int ny() const { return gy.n(); }
  double& at(int i, int j, int p, int q);
  double at(int i, int j, int p, int q) const;
  // Physical coordinates of node p (resp. q) in cell i (resp. j).
  double node_x(int i, int p) const;
  double node_y(int j, int q) const;
};

TensorField2D project2d(const std::function<double(double, double)>& fn,
                        const Grid1D& gx, const Grid1D& gy, int k);

struct Solver2DConfig {
  int k = 1;
  const RKTableau* rk = nullptr;  // defaults like the 1D scheme
  Velocity2D a, b;
  LimiterOptions lim;
  int split_order = 2;  // 2 = Strang, 4 = triple-jump composition
};

// Quadrature-weighted L2/Linf error against a reference and total mass.
struct Norms2D {
  double l2 = 0.0, linf = 0.0;
};
Norms2D error_norms2d(const TensorField2D& f,
                      const std::function<double(double, double)>& exact);
double total_mass2d(const TensorField2D& f);

// One x-direction sweep over physical time [t, t+dt]: each horizontal node
// line is advanced by a single 1D step with velocity a(., y_line, .).
void sweep_x(TensorField2D& f, const Solver2DConfig& cfg, double t, double dt);
void sweep_y(TensorField2D& f, const Solver2DConfig& cfg, double t, double dt);

// Strang composition over [t, t+dt]: x half, y full, x half.
void strang_step(TensorField2D& f, const Solver2DConfig& cfg, double t,
                 double dt);

// Marches to T with dt = cfl / (a_max/dx + b_max/dy); split_order 4 wraps
// each step in the triple-jump composition (one negative substep).
struct Advance2DStats {
  int steps = 0;
  double mass_drift_max = 0.0;
};
Advance2DStats advance2d(TensorField2D& f, const Solver2DConfig& cfg,
                         double t0, double T, double cfl, double a_max,
                         double b_max);

// CSV rows: i, j, p, q, x, y, value.
void write_csv2d(const TensorField2D& f, std::ostream& os);

}  // namespace geldg
