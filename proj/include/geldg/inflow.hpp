#pragma once

#include <functional>

#include "geldg/scheme.hpp"

namespace geldg {

// Integrates dx/dt = a(x,t) from (x0, t_from) to t_to with the classical
// 4-stage one-step method, at least 10 sub-steps (and sub-steps no longer
// than dt_ref/10 when dt_ref > 0). Works in either time direction.
double trace_characteristic(const Velocity& a, double x0, double t_from,
                            double t_to, double dt_ref = 0.0);

// First time t* > t0 at which the characteristic from (x0, t0) reaches
// x_target (moving toward it); throws if it fails to cross before horizon.
double boundary_crossing_time(const Velocity& a, double x0, double t0,
                              double x_target, double dt_ref, double horizon);

// Ghost machinery for an inflow boundary on the left end of the domain
// (velocity pointing into the domain at x_a). The extended grid prepends
// ghost cells; per step they are refilled from the boundary data and the
// nearest few are evolved alongside the interior.
struct GhostRegion {
  int total = 0;    // ghost cell count G
  int evolved = 0;  // trailing ghost cells updated by the scheme
  std::function<double(double)> boundary_f;  // u(x_boundary, t)
};

// Fills the ghost-cell coefficients of the extended field (cells 0..G-1)
// at time t_n: for each ghost cell the boundary-data time integral between
// the edge crossing times, with the adjoint value traced back to t_n.
void fill_ghost(DGField& ext, const GhostRegion& ghost, const Velocity& a,
                double t_n, double dt_ref);

// Driver owning the extended field; step() refills ghosts and advances the
// interior plus the evolved ghost band.
class InflowSolver {
 public:
  InflowSolver(const Grid1D& interior, const SchemeConfig& cfg,
               std::function<double(double)> boundary_f,
               const ScalarFn& u0, double cfl, double a_max);

  void step_once(double t, double dt, StepStats* stats = nullptr);
  AdvanceStats advance(double t0, double T, double cfl, double a_max);

  // Projection-grid view of the interior solution.
  DGField interior_field() const;
  const DGField& extended_field() const { return ext_; }
  int ghost_cells() const { return ghost_.total; }

 private:
  SchemeConfig cfg_;
  GhostRegion ghost_;
  DGField ext_;
  int n_interior_ = 0;
  StepWorkspace ws_;
};

}  // namespace geldg
