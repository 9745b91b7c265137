#include "geldg/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geldg/basis.hpp"
#include "geldg/quadrature.hpp"

namespace geldg {

namespace {

// Static tables of psi at the k+2 volume quadrature nodes and at the
// reference-cell endpoints.
struct BasisTables {
  int nq = 0;
  double node_r[kMaxBasisDegree + 2];
  double node_w[kMaxBasisDegree + 2];
  double psi[kMaxBasisDegree + 2][kMaxBasisDegree + 1];
  double psi_left[kMaxBasisDegree + 1];   // r = -1/2
  double psi_right[kMaxBasisDegree + 1];  // r = +1/2
};

const BasisTables& tables(int k) {
  static BasisTables cache[4];
  static bool built[4] = {};
  BasisTables& tb = cache[k];
  if (!built[k]) {
    const GaussRule& q = gauss_legendre(k + 2);
    tb.nq = q.n;
    for (int i = 0; i < q.n; ++i) {
      tb.node_r[i] = 0.5 * q.nodes[i];
      tb.node_w[i] = 0.5 * q.weights[i];
      basis_all(k, tb.node_r[i], tb.psi[i]);
    }
    basis_all(k, -0.5, tb.psi_left);
    basis_all(k, 0.5, tb.psi_right);
    built[k] = true;
  }
  return tb;
}

inline double dot(const double* c, const double* psi, int kp1) {
  double v = 0.0;
  for (int m = 0; m < kp1; ++m) v += c[m] * psi[m];
  return v;
}

// Residual for all cells at time t; U cell-major, L written in place and
// per-edge fluxes into F (size n+1). edge_v/edge_x are scratch.
void rhs_impl(const double* U, const SchemeConfig& cfg,
              const SpaceTimeSlab& slab, double t, double* L,
              std::vector<double>& F, std::vector<double>& edge_v,
              std::vector<double>& edge_x) {
  const Grid1D& g = *slab.grid;
  const int n = g.n();
  const int k = cfg.k;
  const int kp1 = k + 1;
  const bool periodic = g.bc == BcKind::periodic;
  const BasisTables& tb = tables(k);

  F.resize(n + 1);
  edge_v.resize(n + 1);
  edge_x.resize(n + 1);
  for (int e = 0; e <= n; ++e) {
    edge_x[e] = slab.dynamic_edge(e, t);
    edge_v[e] = cfg.a(edge_x[e], t);
  }
  double alpha0_global = 0.0;
  for (int e = 0; e <= n; ++e) {
    alpha0_global = std::max(alpha0_global, std::abs(edge_v[e] - slab.nu[e]));
  }
  for (int e = 0; e <= n; ++e) {
    const int jl = e - 1 >= 0 ? e - 1 : (periodic ? n - 1 : 0);
    const int jr = e < n ? e : (periodic ? 0 : n - 1);
    double um = dot(U + static_cast<size_t>(jl) * kp1, tb.psi_right, kp1);
    double up = dot(U + static_cast<size_t>(jr) * kp1, tb.psi_left, kp1);
    // Non-periodic boundary edges copy the interior trace (pure upwinding;
    // ghost cells make the true inflow edge a regular interior one).
    if (!periodic && e == 0) um = up;
    if (!periodic && e == n) up = um;
    const double alpha0 = cfg.visc == ViscosityMode::global_max
                              ? alpha0_global
                              : std::abs(edge_v[e] - slab.nu[e]);
    F[e] = numerical_flux(um, up, edge_v[e], slab.nu[e], alpha0);
  }

  double psi_r[kMaxBasisDegree + 1], psi_l[kMaxBasisDegree + 1];
  double dpsi[kMaxBasisDegree + 1];
  for (int j = 0; j < n; ++j) {
    const double dxj = g.dx(j);
    const double xc = g.center(j);
    const double shift = slab.alpha[j] * (t - slab.t_np1);
    const double width = slab.cell_width(j, t);
    const double jac = width / dxj;
    double* Lj = L + static_cast<size_t>(j) * kp1;

    // Test values at the dynamic cell edges (natural extension).
    basis_all(k, (edge_x[j + 1] - shift - xc) / dxj, psi_r);
    basis_all(k, (edge_x[j] - shift - xc) / dxj, psi_l);
    for (int m = 0; m <= k; ++m) {
      Lj[m] = -F[j + 1] * psi_r[m] + F[j] * psi_l[m];
    }
    if (k == 0) continue;

    const double* uj = U + static_cast<size_t>(j) * kp1;
    const double x_left = edge_x[j];
    for (int q = 0; q < tb.nq; ++q) {
      const double x_dyn = x_left + (tb.node_r[q] + 0.5) * width;
      const double av = cfg.a(x_dyn, t);
      const double uq = dot(uj, tb.psi[q], kp1);
      basis_deriv_all(k, (x_dyn - shift - xc) / dxj, dpsi);
      const double w = tb.node_w[q] * (av - slab.alpha[j]) * uq * jac;
      for (int m = 1; m <= k; ++m) Lj[m] += w * dpsi[m];
    }
  }
}

}  // namespace

const RKTableau& SchemeConfig::tableau() const {
  if (rk) return *rk;
  return ssp_rk(std::max(1, std::min(4, k + 1)));
}

SpeedRule SchemeConfig::effective_speed() const {
  SpeedRule s = speed;
  if (!s.edge_speed) s.edge_speed = a;
  if (!s.cell_speed) s.cell_speed = a;
  return s;
}

void SchemeConfig::validate() const {
  if (k < 0 || k > 3) throw std::invalid_argument("SchemeConfig: k must be 0..3");
  if (!a) throw std::invalid_argument("SchemeConfig: velocity not set");
  tableau();
}

MassMatrix assemble_mass(const SpaceTimeSlab& slab, int j, double t, int k) {
  const Grid1D& g = *slab.grid;
  const BasisTables& tb = tables(k);
  const double dxj = g.dx(j);
  const double width = slab.cell_width(j, t);  // throws on tangling
  const double jac = width / dxj;
  const double x_left = slab.dynamic_edge(j, t);
  const double shift = slab.alpha[j] * (t - slab.t_np1);
  const double xc = g.center(j);

  MassMatrix A;
  A.n = k + 1;
  double psi_t[kMaxBasisDegree + 1];
  for (int q = 0; q < tb.nq; ++q) {
    const double x_dyn = x_left + (tb.node_r[q] + 0.5) * width;
    const double arg = (x_dyn - shift - xc) / dxj;
    basis_all(k, arg, psi_t);
    const double w = tb.node_w[q] * dxj * jac;
    for (int m = 0; m <= k; ++m) {
      const double wm = w * psi_t[m];
      for (int l = 0; l <= k; ++l) A.a[m][l] += wm * tb.psi[q][l];
    }
  }
  return A;
}

void solve_small(MassMatrix& A, double* b) {
  const int n = A.n;
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(A.a[i][j]);
    norm = std::max(norm, row);
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(A.a[r][col]) > std::abs(A.a[piv][col])) piv = r;
    }
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(A.a[col][c], A.a[piv][c]);
      std::swap(b[col], b[piv]);
    }
    const double p = A.a[col][col];
    if (!(std::abs(p) * 1e12 > norm)) {
      throw std::runtime_error(
          "solve_small: mass matrix ill-conditioned (estimate > 1e12)");
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = A.a[r][col] / p;
      if (f == 0.0) continue;
      for (int c = col + 1; c < n; ++c) A.a[r][c] -= f * A.a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double v = b[r];
    for (int c = r + 1; c < n; ++c) v -= A.a[r][c] * b[c];
    b[r] = v / A.a[r][r];
  }
}

double numerical_flux(double u_minus, double u_plus, double a_edge,
                      double nu_edge, double alpha0) {
  const double c = a_edge - nu_edge;
  return 0.5 * (c * u_minus + c * u_plus) + 0.5 * alpha0 * (u_minus - u_plus);
}

void upstream_moments(const DGField& u, const SpaceTimeSlab& slab, int j,
                      double* out) {
  const double dt = slab.dt();
  const double lo = std::min(slab.x_star[j], slab.x_star[j + 1]);
  const double hi = std::max(slab.x_star[j], slab.x_star[j + 1]);
  integrate_all_against_shifted(u, lo, hi, j, slab.alpha[j] * dt, out);
}

void init_upstream(const DGField& u, const SpaceTimeSlab& slab,
                   std::vector<double>& U) {
  const int n = u.grid.n();
  const int kp1 = u.k + 1;
  U.assign(static_cast<size_t>(n) * kp1, 0.0);
  for (int j = 0; j < n; ++j) {
    double* uj = &U[static_cast<size_t>(j) * kp1];
    upstream_moments(u, slab, j, uj);
    MassMatrix A = assemble_mass(slab, j, slab.t_n, u.k);
    solve_small(A, uj);
  }
}

void scheme_rhs(const std::vector<double>& U, const SchemeConfig& cfg,
                const SpaceTimeSlab& slab, double t, std::vector<double>& L,
                std::vector<double>* edge_flux) {
  const int n = slab.grid->n();
  const int kp1 = cfg.k + 1;
  L.assign(static_cast<size_t>(n) * kp1, 0.0);
  std::vector<double> F, ev, ex;
  rhs_impl(U.data(), cfg, slab, t, L.data(), F, ev, ex);
  if (edge_flux) *edge_flux = std::move(F);
}

void step(DGField& u, const SchemeConfig& cfg, double t, double dt,
          StepWorkspace& ws, StepStats* stats, const CellRange* evolve) {
  cfg.validate();
  if (u.k != cfg.k) throw std::invalid_argument("step: field degree mismatch");
  const Grid1D& g = u.grid;
  const int n = g.n();
  const int kp1 = cfg.k + 1;
  const RKTableau& rk = cfg.tableau();
  const int s = rk.stages;
  const int begin = evolve ? evolve->begin : 0;
  const int end = evolve ? evolve->end : n;
  const bool bp = cfg.lim.bound_preserving();

  const SpaceTimeSlab slab = build_slab(g, cfg.effective_speed(), t, dt);

  const size_t cells = static_cast<size_t>(n) * kp1;
  ws.stage_u.assign(cells * (s + 1), 0.0);
  ws.stage_m.assign(cells * (s + 1), 0.0);
  ws.stage_l.assign(cells * s, 0.0);
  ws.hrk.assign(n + 1, 0.0);

  auto stage_u = [&](int l) { return ws.stage_u.data() + cells * l; };
  auto stage_m = [&](int l) { return ws.stage_m.data() + cells * l; };
  auto stage_l = [&](int l) { return ws.stage_l.data() + cells * l; };

  if (bp) rescale_mpp(u, cfg.lim.bounds);

  // Stage 0: L2 projection onto the upstream cells. Cells deeper in the
  // frozen band than the immediate neighbor of the evolved range are never
  // consumed as stage values; they keep their background coefficients (their
  // upstream cells may leave the extended grid).
  const int remap_begin = std::max(0, begin - 1);
  for (int j = 0; j < n; ++j) {
    double* m0 = stage_m(0) + static_cast<size_t>(j) * kp1;
    double* u0 = stage_u(0) + static_cast<size_t>(j) * kp1;
    if (j < remap_begin || j >= end) {
      std::copy(u.cell(j), u.cell(j) + kp1, u0);
      std::copy(u.cell(j), u.cell(j) + kp1, m0);
      continue;
    }
    upstream_moments(u, slab, j, m0);
    std::copy(m0, m0 + kp1, u0);
    MassMatrix A = assemble_mass(slab, j, slab.t_n, cfg.k);
    MassMatrix fac = A;
    solve_small(fac, u0);
    if (bp) {
      // Rescale the remapped polynomial and keep A*U consistent with it.
      rescale_cell_clamped(u0, cfg.k, cfg.lim.bounds);
      for (int m = 0; m < kp1; ++m) m0[m] = dot(A.a[m], u0, kp1);
    }
  }
  if (bp) {
    ws.ubar_tilde.resize(n);
    for (int j = 0; j < n; ++j) {
      ws.ubar_tilde[j] = stage_u(0)[static_cast<size_t>(j) * kp1];
    }
  }

  for (int l = 0; l < s; ++l) {
    const double t_l = t + rk.d[l] * dt;
    rhs_impl(stage_u(l), cfg, slab, t_l, stage_l(l), ws.flux, ws.edge_v,
             ws.edge_x);
    for (int e = 0; e <= n; ++e) ws.hrk[e] += rk.flux_weights[l] * ws.flux[e];

    // Stage i = l+1: accumulate the mass-weighted state and solve.
    const int i = l + 1;
    const double t_i = t + rk.d[i] * dt;
    for (int j = 0; j < n; ++j) {
      double* mi = stage_m(i) + static_cast<size_t>(j) * kp1;
      double* ui = stage_u(i) + static_cast<size_t>(j) * kp1;
      if (j < begin || j >= end) {
        // Frozen cells hold their remapped t_n state through all stages.
        const double* u0 = stage_u(0) + static_cast<size_t>(j) * kp1;
        const double* m0 = stage_m(0) + static_cast<size_t>(j) * kp1;
        std::copy(u0, u0 + kp1, ui);
        std::copy(m0, m0 + kp1, mi);
        continue;
      }
      for (int m = 0; m < kp1; ++m) {
        double v = 0.0;
        for (int lp = 0; lp <= l; ++lp) {
          const size_t idx = cells * lp + static_cast<size_t>(j) * kp1 + m;
          v += rk.alpha[l][lp] * ws.stage_m[idx] +
               rk.beta[l][lp] * dt * ws.stage_l[idx];
        }
        mi[m] = v;
      }
      if (i == s) {
        for (int m = 0; m < kp1; ++m) ui[m] = mi[m] / g.dx(j);
      } else {
        MassMatrix A = assemble_mass(slab, j, t_i, cfg.k);
        std::copy(mi, mi + kp1, ui);
        MassMatrix fac = A;
        solve_small(fac, ui);
        if (cfg.lim.zhang_all_stages) {
          rescale_cell_clamped(ui, cfg.k, cfg.lim.bounds);
          for (int m = 0; m < kp1; ++m) mi[m] = dot(A.a[m], ui, kp1);
        }
      }
    }
  }

  if (stats) {
    stats->theta_below_one = 0;
    stats->theta_min = 1.0;
  }
  if (bp) {
    // First-order fluxes on the upstream edges; the final-stage mean update
    // is blended toward them edge by edge.
    ws.h_low.assign(n + 1, 0.0);
    const bool periodic = g.bc == BcKind::periodic;
    double alpha1 = 0.0;
    ws.edge_v.resize(n + 1);
    for (int e = 0; e <= n; ++e) {
      ws.edge_v[e] = cfg.a(slab.x_star[e], slab.t_n);
      alpha1 = std::max(alpha1, std::abs(ws.edge_v[e] - slab.nu[e]));
    }
    for (int e = 0; e <= n; ++e) {
      const int jl = e - 1 >= 0 ? e - 1 : (periodic ? n - 1 : 0);
      const int jr = e < n ? e : (periodic ? 0 : n - 1);
      ws.h_low[e] = first_order_flux(ws.ubar_tilde[jl], ws.ubar_tilde[jr],
                                     ws.edge_v[e], slab.nu[e], alpha1);
    }
    const ThetaRecord rec = mpp_flux_limit(ws.hrk, ws.h_low, ws.ubar_tilde,
                                           slab, cfg.lim.bounds, dt);
    for (int j = begin; j < end; ++j) {
      const double lam = dt / g.dx(j);
      double* us = stage_u(s) + static_cast<size_t>(j) * kp1;
      us[0] +=
          lam * ((1.0 - rec.theta[j + 1]) * (ws.hrk[j + 1] - ws.h_low[j + 1]) -
                 (1.0 - rec.theta[j]) * (ws.hrk[j] - ws.h_low[j]));
    }
    if (stats) {
      stats->theta_below_one = rec.n_below_one;
      stats->theta_min = rec.theta_min;
    }
  }

  std::copy(stage_u(s) + static_cast<size_t>(begin) * kp1,
            stage_u(s) + static_cast<size_t>(end) * kp1,
            u.coef.begin() + static_cast<size_t>(begin) * kp1);
  if (cfg.lim.tvb) tvb_minmod(u, cfg.lim.tvb_m);
  if (bp) {
    for (int j = begin; j < end; ++j) {
      rescale_cell(u.cell(j), cfg.k, cfg.lim.bounds);
    }
  }
  if (stats) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int j = begin; j < end; ++j) {
      double clo, chi;
      cell_node_range(u.cell(j), cfg.k, &clo, &chi);
      lo = std::min(lo, clo);
      hi = std::max(hi, chi);
    }
    stats->node_min = lo;
    stats->node_max = hi;
  }
}

void step(DGField& u, const SchemeConfig& cfg, double t, double dt,
          StepStats* stats) {
  StepWorkspace ws;
  step(u, cfg, t, dt, ws, stats, nullptr);
}

AdvanceStats advance(DGField& u, const SchemeConfig& cfg, double t0, double T,
                     double cfl, double a_max) {
  if (!(T > 0.0)) throw std::invalid_argument("advance: T must be positive");
  if (!(cfl > 0.0) || !(a_max > 0.0)) {
    throw std::invalid_argument("advance: cfl and a_max must be positive");
  }
  const double dt_base = cfl * u.grid.dx_min() / a_max;
  AdvanceStats out;
  out.node_min = std::numeric_limits<double>::infinity();
  out.node_max = -out.node_min;
  StepWorkspace ws;
  StepStats st;
  double t = 0.0;  // elapsed
  const bool periodic = u.grid.bc == BcKind::periodic;
  while (t < T * (1.0 - 1e-14)) {
    const double dt = std::min(dt_base, T - t);
    const double mass_before = periodic ? total_mass(u) : 0.0;
    step(u, cfg, t0 + t, dt, ws, &st, nullptr);
    if (periodic) {
      out.mass_drift_max =
          std::max(out.mass_drift_max, std::abs(total_mass(u) - mass_before));
    }
    out.node_min = std::min(out.node_min, st.node_min);
    out.node_max = std::max(out.node_max, st.node_max);
    out.theta_min = std::min(out.theta_min, st.theta_min);
    out.theta_below_one += st.theta_below_one;
    ++out.steps;
    t += dt;
  }
  return out;
}

}  // namespace geldg
