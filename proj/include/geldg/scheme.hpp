#pragma once

#include <vector>

#include "geldg/field.hpp"
#include "geldg/limiter.hpp"
#include "geldg/rk.hpp"
#include "geldg/slab.hpp"

namespace geldg {

enum class ViscosityMode { global_max, local };

struct LimiterOptions {
  bool mpp = false;               // flux limiter + rescale, final stage only
  bool pp = false;                // same pipeline, lower bound only
  bool zhang_all_stages = false;  // rescale at every RK stage instead
  bool tvb = false;
  double tvb_m = 0.0;
  Bounds bounds;

  bool bound_preserving() const { return mpp || pp; }
};

struct SchemeConfig {
  int k = 2;                      // polynomial degree, 0..3
  const RKTableau* rk = nullptr;  // defaults to ssp_rk(min(k+1,4)) when null
  Velocity a;                     // PDE velocity a(x,t)
  SpeedRule speed;                // empty members default to a
  ViscosityMode visc = ViscosityMode::global_max;
  LimiterOptions lim;

  const RKTableau& tableau() const;
  SpeedRule effective_speed() const;
  void validate() const;
};

struct StepStats {
  int theta_below_one = 0;
  double theta_min = 1.0;
  double node_min = 0.0, node_max = 0.0;  // sampled range after the step
};

// (k+1)x(k+1) time-dependent mass matrix of cell j at time t; rows are test
// indices m, columns basis indices l. Equals dx_j * I at the target time.
struct MassMatrix {
  int n = 0;
  double a[4][4] = {};
};

MassMatrix assemble_mass(const SpaceTimeSlab& slab, int j, double t, int k);

// Solves A x = b in place (partial pivoting); throws when the pivot-based
// condition estimate exceeds 1e12.
void solve_small(MassMatrix& a, double* b);

// Lax-Friedrichs flux for F(u) = (a - nu) u; alpha0 >= |a - nu|.
double numerical_flux(double u_minus, double u_plus, double a_edge,
                      double nu_edge, double alpha0);

// L2 moments of u against cell j's test polynomial on the upstream cell:
// b_m = int_{I*_j} u(x) psi_m(x + alpha_j dt) dx.
void upstream_moments(const DGField& u, const SpaceTimeSlab& slab, int j,
                      double* out);

// Projection of u(., t_n) onto the upstream cells: per cell, solves
// A_j(t_n) U_j = upstream moments. U is cell-major, n*(k+1).
void init_upstream(const DGField& u, const SpaceTimeSlab& slab,
                   std::vector<double>& U);

// Residual d/dt (A_j U_j) of the semi-discrete scheme at time t for stage
// coefficients U; optionally returns the per-edge fluxes used.
void scheme_rhs(const std::vector<double>& U, const SchemeConfig& cfg,
                const SpaceTimeSlab& slab, double t, std::vector<double>& L,
                std::vector<double>* edge_flux = nullptr);

// Cells [begin, end) are updated; cells outside hold their remapped t_n
// coefficients through all stages (inflow ghost handling).
struct CellRange {
  int begin = 0;
  int end = 0;
};

// Scratch buffers reused across steps.
struct StepWorkspace {
  std::vector<double> stage_u, stage_m, stage_l;
  std::vector<double> flux, hrk, h_low, ubar_tilde;
  std::vector<double> edge_v, edge_x;
};

// One fully discrete step t -> t + dt (dt may be negative).
void step(DGField& u, const SchemeConfig& cfg, double t, double dt,
          StepWorkspace& ws, StepStats* stats = nullptr,
          const CellRange* evolve = nullptr);
void step(DGField& u, const SchemeConfig& cfg, double t, double dt,
          StepStats* stats = nullptr);

struct AdvanceStats {
  int steps = 0;
  double mass_drift_max = 0.0;  // max per-step |mass change| (periodic)
  double node_min = 0.0, node_max = 0.0;
  double theta_min = 1.0;
  long theta_below_one = 0;
};

// March from t0 to t0 + T with dt = cfl * dx_min / a_max; the last step is
// clipped to land on t0 + T exactly.
AdvanceStats advance(DGField& u, const SchemeConfig& cfg, double t0, double T,
                     double cfl, double a_max);

}  // namespace geldg
