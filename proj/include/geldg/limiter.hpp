#pragma once

#include <limits>
#include <vector>

#include "geldg/field.hpp"
#include "geldg/slab.hpp"

namespace geldg {

// Global solution bounds; positivity-only mode uses hi = +inf.
struct Bounds {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lower_active() const { return lo > -std::numeric_limits<double>::infinity(); }
  bool upper_active() const { return hi < std::numeric_limits<double>::infinity(); }
};

struct ThetaRecord {
  std::vector<double> theta;  // per edge, in [0,1]; 1 where nothing to do
  int n_below_one = 0;
  double theta_min = 1.0;
};

// Polynomial rescaling toward the cell average: p <- theta*(p - pbar) + pbar
// with theta chosen from the extrema over k+2 Gauss nodes plus the two cell
// endpoints. Cell averages must already satisfy the bounds (up to roundoff);
// rescale_mpp throws past that tolerance, the _clamped variant saturates
// theta at 0 instead (used inside RK stages where averages may drift).
void rescale_cell(double* c, int k, const Bounds& b);
void rescale_cell_clamped(double* c, int k, const Bounds& b);
void rescale_mpp(DGField& f, const Bounds& b);

// Extrema of the cell polynomial over the rescale sampling nodes.
void cell_node_range(const double* c, int k, double* lo, double* hi);

// First-order monotone (Lax-Friedrichs) flux for F(u) = (a - nu) u with
// global viscosity alpha1 >= max |a - nu|.
double first_order_flux(double ubar_left, double ubar_right, double a_edge,
                        double nu_edge, double alpha1);

// Parametrized flux limiter on the moving-mesh update
//   ubar_j^{n+1} = (w*_j/dx_j) ubar~_j - lam_j (H_{j+1/2} - H_{j-1/2}),
// blending the time-combined high-order fluxes Hrk toward the first-order
// fluxes h so that every new cell average lands in [lo, hi]. Edge theta is
// the minimum of the two adjacent cells' sign-split allowances; theta = 0
// recovers the first-order update and is always admissible.
// Arrays: Hrk/h per edge (n+1), ubar_tilde per cell (n). Throws if the
// first-order update itself violates the bounds beyond roundoff.
ThetaRecord mpp_flux_limit(const std::vector<double>& Hrk,
                           const std::vector<double>& h,
                           const std::vector<double>& ubar_tilde,
                           const SpaceTimeSlab& slab, const Bounds& b,
                           double dt);

// Classical TVB-modified minmod slope limiter with constant M: cells whose
// edge deviations are altered get their linear mode limited and higher modes
// zeroed. Cell averages are untouched.
void tvb_minmod(DGField& f, double m_const);

}  // namespace geldg
