#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "geldg/grid.hpp"

namespace geldg {

using ScalarFn = std::function<double(double)>;

struct Norms {
  double l1 = 0.0, l2 = 0.0, linf = 0.0;
};

// Piecewise polynomial on the background grid, modal coefficients per cell:
//   u_h|_{I_j}(x) = sum_m c(j,m) psi_m(r),  r = (x - x_j) / dx_j.
// The cell average is c(j,0) since psi_0 == 1 and the basis is orthonormal.
struct DGField {
  Grid1D grid;
  int k = 0;
  std::vector<double> coef;  // n * (k+1), cell-major

  DGField() = default;
  DGField(Grid1D g, int degree)
      : grid(std::move(g)), k(degree),
        coef(static_cast<size_t>(grid.n()) * (degree + 1), 0.0) {}

  double& c(int j, int m) { return coef[static_cast<size_t>(j) * (k + 1) + m]; }
  double c(int j, int m) const {
    return coef[static_cast<size_t>(j) * (k + 1) + m];
  }
  const double* cell(int j) const { return &coef[static_cast<size_t>(j) * (k + 1)]; }
  double* cell(int j) { return &coef[static_cast<size_t>(j) * (k + 1)]; }

  // Value of the polynomial owned by cell j at unwrapped coordinate x.
  double eval_in_cell(int j, double x) const;
};

// Point evaluation; periodic wrap applied, out-of-domain otherwise throws.
double eval(const DGField& f, double x);
// One-sided traces at interior edge e (between cells e-1 and e; periodic
// grids also accept the boundary edge): minus = left cell, plus = right cell.
double eval_minus(const DGField& f, int e);
double eval_plus(const DGField& f, int e);

// Cell-wise L2 projection with k+2-node Gauss quadrature.
DGField project(const ScalarFn& fn, const Grid1D& grid, int k);

// Exact integral of u_h(x) * psi_{j,m}(x + s) over [a,b] (segment-split at
// background edges, k+2-node Gauss per segment). The test factor is cell j's
// reference polynomial, naturally extended; u_h is unwrapped periodically.
double integrate_against_shifted(const DGField& f, double a, double b,
                                 int j_test, double s, int m);
// Same integral for all test indices m = 0..k in one pass.
void integrate_all_against_shifted(const DGField& f, double a, double b,
                                   int j_test, double s, double* out);

// Errors against a reference function with k+3 Gauss nodes per cell.
// L1 and L2 are domain-averaged (mean absolute / root mean square, the
// convention of the reported error tables); Linf is over the nodes.
Norms error_norms(const DGField& f, const ScalarFn& exact);

double total_mass(const DGField& f);

// CSV rows: j, x_center, c_0..c_k.
void write_csv(const DGField& f, std::ostream& os);

}  // namespace geldg
