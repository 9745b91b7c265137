#include "geldg/inflow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "geldg/basis.hpp"
#include "geldg/quadrature.hpp"

namespace geldg {

namespace {

double rk4_step(const Velocity& a, double x, double t, double h) {
  const double k1 = a(x, t);
  const double k2 = a(x + 0.5 * h * k1, t + 0.5 * h);
  const double k3 = a(x + 0.5 * h * k2, t + 0.5 * h);
  const double k4 = a(x + h * k3, t + h);
  return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

double trace_characteristic(const Velocity& a, double x0, double t_from,
                            double t_to, double dt_ref) {
  const double span = t_to - t_from;
  if (span == 0.0) return x0;
  int n = 10;
  if (dt_ref > 0.0) {
    n = std::max(n, static_cast<int>(std::ceil(10.0 * std::abs(span) / dt_ref)));
  }
  const double h = span / n;
  double x = x0, t = t_from;
  for (int i = 0; i < n; ++i) {
    x = rk4_step(a, x, t, h);
    t = t_from + (i + 1) * h;
  }
  return x;
}

double boundary_crossing_time(const Velocity& a, double x0, double t0,
                              double x_target, double dt_ref, double horizon) {
  const double side0 = x0 - x_target;
  if (side0 == 0.0) return t0;
  // March forward until the characteristic ends up past the target, then
  // bisect on the crossing sub-interval.
  const double h = dt_ref > 0.0 ? dt_ref / 10.0 : horizon / 1000.0;
  double t_lo = t0, x_lo = x0;
  double t_hi = t0, x_hi = x0;
  bool bracketed = false;
  while (t_hi < t0 + horizon) {
    t_hi = std::min(t_lo + h, t0 + horizon);
    x_hi = trace_characteristic(a, x_lo, t_lo, t_hi, dt_ref);
    if ((x_hi - x_target) * side0 <= 0.0) {
      bracketed = true;
      break;
    }
    t_lo = t_hi;
    x_lo = x_hi;
  }
  if (!bracketed) {
    throw std::runtime_error(
        "boundary_crossing_time: characteristic failed to reach the boundary "
        "within the search horizon");
  }
  for (int it = 0; it < 200; ++it) {
    const double t_mid = 0.5 * (t_lo + t_hi);
    const double x_mid = trace_characteristic(a, x_lo, t_lo, t_mid, dt_ref);
    if ((x_mid - x_target) * side0 <= 0.0) {
      t_hi = t_mid;
    } else {
      t_lo = t_mid;
      x_lo = x_mid;
    }
    if (t_hi - t_lo < 1e-15 * (1.0 + std::abs(t_hi))) break;
  }
  return 0.5 * (t_lo + t_hi);
}

void fill_ghost(DGField& ext, const GhostRegion& ghost, const Velocity& a,
                double t_n, double dt_ref) {
  const Grid1D& g = ext.grid;
  const int G = ghost.total;
  const int k = ext.k;
  const double xb = g.edge(G);  // physical inflow boundary
  const double ghost_width = xb - g.edge(0);
  const double speed = std::max(std::abs(a(xb, t_n)), 1e-12);
  const double horizon = 16.0 * (ghost_width + g.dx(0)) / speed;

  // Edge crossing times, rightmost ghost edge first (t* = t_n there).
  std::vector<double> t_star(G + 1);
  t_star[G] = t_n;
  for (int e = G - 1; e >= 0; --e) {
    t_star[e] =
        boundary_crossing_time(a, g.edge(e), t_n, xb, dt_ref, horizon);
    if (t_star[e] < t_star[e + 1]) {
      throw std::runtime_error("fill_ghost: crossing times not monotone");
    }
  }

  const GaussRule& q = gauss_legendre(k + 2);
  double psi[kMaxBasisDegree + 1];
  for (int j = 0; j < G; ++j) {
    // int_{I_j} u(x,t_n) psi_m(x) dx = int over the boundary crossing window
    // of a(xb,t) f(t) psi_m(foot(t)), with the adjoint value constant along
    // the exact characteristic.
    const double t_lo = t_star[j + 1], t_hi = t_star[j];
    const double mid = 0.5 * (t_lo + t_hi), half = 0.5 * (t_hi - t_lo);
    double moments[kMaxBasisDegree + 1] = {};
    for (int i = 0; i < q.n; ++i) {
      const double tq = mid + half * q.nodes[i];
      const double foot = trace_characteristic(a, xb, tq, t_n, dt_ref);
      basis_all(k, g.ref_coord(j, foot), psi);
      const double w =
          half * q.weights[i] * a(xb, tq) * ghost.boundary_f(tq);
      for (int m = 0; m <= k; ++m) moments[m] += w * psi[m];
    }
    for (int m = 0; m <= k; ++m) ext.c(j, m) = moments[m] / g.dx(j);
  }
}

InflowSolver::InflowSolver(const Grid1D& interior, const SchemeConfig& cfg,
                           std::function<double(double)> boundary_f,
                           const ScalarFn& u0, double cfl, double a_max)
    : cfg_(cfg) {
  cfg_.validate();
  if (interior.bc != BcKind::inflow) {
    throw std::invalid_argument("InflowSolver: grid bc must be inflow");
  }
  if (!(cfg_.a(interior.xa(), 0.0) > 0.0)) {
    throw std::invalid_argument(
        "InflowSolver: only a left inflow boundary (a(x_a) > 0) is supported");
  }
  n_interior_ = interior.n();
  const int stages = cfg_.tableau().stages;
  const int reach = static_cast<int>(std::ceil(cfl)) + 1;
  ghost_.evolved = stages + 1;
  ghost_.total = reach + ghost_.evolved + 1;
  ghost_.boundary_f = std::move(boundary_f);

  const double h = interior.dx(0);
  std::vector<double> edges(ghost_.total + n_interior_ + 1);
  for (int e = 0; e <= n_interior_; ++e) {
    edges[ghost_.total + e] = interior.edge(e);
  }
  for (int e = ghost_.total - 1; e >= 0; --e) edges[e] = edges[e + 1] - h;
  Grid1D ext_grid = Grid1D::from_edges(std::move(edges), BcKind::inflow);
  ext_grid.uniform = interior.uniform;
  ext_ = DGField(ext_grid, cfg_.k);

  DGField interior_init = project(u0, interior, cfg_.k);
  std::copy(interior_init.coef.begin(), interior_init.coef.end(),
            ext_.coef.begin() +
                static_cast<size_t>(ghost_.total) * (cfg_.k + 1));
  (void)a_max;
}

void InflowSolver::step_once(double t, double dt, StepStats* stats) {
  fill_ghost(ext_, ghost_, cfg_.a, t, dt);
  const CellRange evolve{ghost_.total - ghost_.evolved,
                         ghost_.total + n_interior_};
  step(ext_, cfg_, t, dt, ws_, stats, &evolve);
}

AdvanceStats InflowSolver::advance(double t0, double T, double cfl,
                                   double a_max) {
  if (!(T > 0.0)) throw std::invalid_argument("advance: T must be positive");
  const double dt_base = cfl * ext_.grid.dx_min() / a_max;
  AdvanceStats out;
  out.node_min = std::numeric_limits<double>::infinity();
  out.node_max = -out.node_min;
  StepStats st;
  double t = 0.0;
  while (t < T * (1.0 - 1e-14)) {
    const double dt = std::min(dt_base, T - t);
    step_once(t0 + t, dt, &st);
    out.node_min = std::min(out.node_min, st.node_min);
    out.node_max = std::max(out.node_max, st.node_max);
    out.theta_min = std::min(out.theta_min, st.theta_min);
    out.theta_below_one += st.theta_below_one;
    ++out.steps;
    t += dt;
  }
  return out;
}

DGField InflowSolver::interior_field() const {
  Grid1D interior = Grid1D::from_edges(
      std::vector<double>(ext_.grid.edges.begin() + ghost_.total,
                          ext_.grid.edges.end()),
      BcKind::inflow);
  interior.uniform = ext_.grid.uniform;
  DGField f(interior, ext_.k);
  std::copy(ext_.coef.begin() + static_cast<size_t>(ghost_.total) * (ext_.k + 1),
            ext_.coef.end(), f.coef.begin());
  return f;
}

}  // namespace geldg
