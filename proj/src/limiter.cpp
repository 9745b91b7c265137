#include "geldg/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geldg/basis.hpp"
#include "geldg/quadrature.hpp"

namespace geldg {

namespace {

constexpr double kAvgTol = 1e-13;

// Sampling nodes for extrema: k+2 Gauss nodes plus both endpoints.
struct RescaleNodes {
  int count = 0;
  double psi[kMaxBasisDegree + 3][kMaxBasisDegree + 1];
};

const RescaleNodes& rescale_nodes(int k) {
  static RescaleNodes cache[kMaxBasisDegree + 1];
  static bool built[kMaxBasisDegree + 1] = {};
  RescaleNodes& rn = cache[k];
  if (!built[k]) {
    const GaussRule& q = gauss_legendre(k + 2);
    rn.count = q.n + 2;
    basis_all(k, -0.5, rn.psi[0]);
    for (int i = 0; i < q.n; ++i) basis_all(k, 0.5 * q.nodes[i], rn.psi[i + 1]);
    basis_all(k, 0.5, rn.psi[q.n + 1]);
    built[k] = true;
  }
  return rn;
}

double rescale_theta(const double* c, int k, const Bounds& b, bool* violated) {
  double lo, hi;
  cell_node_range(c, k, &lo, &hi);
  const double avg = c[0];
  double theta = 1.0;
  *violated = false;
  if (b.upper_active() && hi > b.hi) {
    if (avg > b.hi) {
      *violated = true;
      theta = 0.0;
    } else {
      theta = std::min(theta, (b.hi - avg) / (hi - avg));
    }
  }
  if (b.lower_active() && lo < b.lo) {
    if (avg < b.lo) {
      *violated = true;
      theta = 0.0;
    } else {
      theta = std::min(theta, (avg - b.lo) / (avg - lo));
    }
  }
  return std::clamp(theta, 0.0, 1.0);
}

inline void apply_theta(double* c, int k, double theta) {
  if (theta >= 1.0) return;
  for (int m = 1; m <= k; ++m) c[m] *= theta;
}

inline double minmod3(double a, double b, double c) {
  if (a > 0 && b > 0 && c > 0) return std::min({a, b, c});
  if (a < 0 && b < 0 && c < 0) return std::max({a, b, c});
  return 0.0;
}

}  // namespace

void cell_node_range(const double* c, int k, double* lo, double* hi) {
  const RescaleNodes& rn = rescale_nodes(k);
  double vmin = c[0], vmax = c[0];
  for (int i = 0; i < rn.count; ++i) {
    double v = 0.0;
    for (int m = 0; m <= k; ++m) v += c[m] * rn.psi[i][m];
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  *lo = vmin;
  *hi = vmax;
}

void rescale_cell(double* c, int k, const Bounds& b) {
  const double scale =
      1.0 + std::max(std::abs(b.lower_active() ? b.lo : 0.0),
                     std::abs(b.upper_active() ? b.hi : 0.0));
  if ((b.upper_active() && c[0] > b.hi + kAvgTol * scale) ||
      (b.lower_active() && c[0] < b.lo - kAvgTol * scale)) {
    throw std::runtime_error("rescale_mpp: cell average violates bounds");
  }
  bool violated = false;
  apply_theta(c, k, rescale_theta(c, k, b, &violated));
}

void rescale_cell_clamped(double* c, int k, const Bounds& b) {
  bool violated = false;
  apply_theta(c, k, rescale_theta(c, k, b, &violated));
}

void rescale_mpp(DGField& f, const Bounds& b) {
  for (int j = 0; j < f.grid.n(); ++j) rescale_cell(f.cell(j), f.k, b);
}

double first_order_flux(double ubar_left, double ubar_right, double a_edge,
                        double nu_edge, double alpha1) {
  const double c = a_edge - nu_edge;
  return 0.5 * c * (ubar_right + ubar_left) -
         0.5 * alpha1 * (ubar_right - ubar_left);
}

ThetaRecord mpp_flux_limit(const std::vector<double>& Hrk,
                           const std::vector<double>& h,
                           const std::vector<double>& ubar_tilde,
                           const SpaceTimeSlab& slab, const Bounds& b,
                           double dt) {
  const Grid1D& g = *slab.grid;
  const int n = g.n();
  const bool periodic = g.bc == BcKind::periodic;

  // Per-cell allowances against the upper/lower bound, from the sign split
  // of the antidiffusive edge contributions.
  std::vector<double> lam_upper(n, 1.0), lam_lower(n, 1.0);
  const double tol = 1e-11 * (1.0 + std::max(std::abs(b.lower_active() ? b.lo : 0.0),
                                             std::abs(b.upper_active() ? b.hi : 0.0)));
  for (int j = 0; j < n; ++j) {
    const double lam = dt / g.dx(j);
    const double f_minus = lam * (Hrk[j] - h[j]);        // coefficient of theta_{j-1/2}
    const double f_plus = -lam * (Hrk[j + 1] - h[j + 1]);  // coefficient of theta_{j+1/2}
    const double first_order_mean = slab.upstream_width(j) / g.dx(j) * ubar_tilde[j] -
                                    lam * (h[j + 1] - h[j]);
    if (b.upper_active()) {
      double gamma = b.hi - first_order_mean;
      if (gamma < -tol) {
        throw std::runtime_error("mpp_flux_limit: first-order update above bound");
      }
      gamma = std::max(gamma, 0.0);
      const double pos = std::max(f_minus, 0.0) + std::max(f_plus, 0.0);
      lam_upper[j] = pos > 0.0 ? std::min(1.0, gamma / pos) : 1.0;
    }
    if (b.lower_active()) {
      double gamma = b.lo - first_order_mean;
      if (gamma > tol) {
        throw std::runtime_error("mpp_flux_limit: first-order update below bound");
      }
      gamma = std::min(gamma, 0.0);
      const double neg = std::min(f_minus, 0.0) + std::min(f_plus, 0.0);
      lam_lower[j] = neg < 0.0 ? std::min(1.0, gamma / neg) : 1.0;
    }
  }

  ThetaRecord rec;
  rec.theta.assign(n + 1, 1.0);
  for (int e = 0; e <= n; ++e) {
    if (periodic && e == n) {
      rec.theta[e] = rec.theta[0];
      continue;
    }
    const double dh = Hrk[e] - h[e];
    if (dh == 0.0) continue;
    const int left = e - 1 >= 0 ? e - 1 : (periodic ? n - 1 : -1);
    const int right = e < n ? e : -1;
    double theta = 1.0;
    if (dh < 0.0) {
      // raises the left mean, lowers the right mean
      if (left >= 0) theta = std::min(theta, lam_upper[left]);
      if (right >= 0) theta = std::min(theta, lam_lower[right]);
    } else {
      if (left >= 0) theta = std::min(theta, lam_lower[left]);
      if (right >= 0) theta = std::min(theta, lam_upper[right]);
    }
    rec.theta[e] = std::clamp(theta, 0.0, 1.0);
  }
  for (int e = 0; e < n + (periodic ? 0 : 1); ++e) {
    if (rec.theta[e] < 1.0 - 1e-14) {
      ++rec.n_below_one;
      rec.theta_min = std::min(rec.theta_min, rec.theta[e]);
    }
  }
  return rec;
}

void tvb_minmod(DGField& f, double m_const) {
  const int n = f.grid.n();
  const int k = f.k;
  if (k < 1 || n < 3) return;
  const bool periodic = f.grid.bc == BcKind::periodic;
  double psi_r[kMaxBasisDegree + 1], psi_l[kMaxBasisDegree + 1];
  basis_all(k, 0.5, psi_r);
  basis_all(k, -0.5, psi_l);
  const double sqrt3 = psi_r[1];  // psi_1(1/2)

  std::vector<double> avg(n);
  for (int j = 0; j < n; ++j) avg[j] = f.c(j, 0);

  std::vector<std::pair<int, double>> limited;
  for (int j = 0; j < n; ++j) {
    const int jm = j > 0 ? j - 1 : (periodic ? n - 1 : -1);
    const int jp = j < n - 1 ? j + 1 : (periodic ? 0 : -1);
    if (jm < 0 || jp < 0) continue;
    const double* cj = f.cell(j);
    double dev_r = 0.0, dev_l = 0.0;
    for (int m = 1; m <= k; ++m) {
      dev_r += cj[m] * psi_r[m];
      dev_l -= cj[m] * psi_l[m];
    }
    const double dp = avg[jp] - avg[j];
    const double dm = avg[j] - avg[jm];
    const double tvb = m_const * f.grid.dx(j) * f.grid.dx(j);
    const double mod_r = std::abs(dev_r) <= tvb ? dev_r : minmod3(dev_r, dp, dm);
    const double mod_l = std::abs(dev_l) <= tvb ? dev_l : minmod3(dev_l, dp, dm);
    const double eps = 1e-13 * (1.0 + std::abs(dev_r) + std::abs(dev_l));
    if (std::abs(mod_r - dev_r) > eps || std::abs(mod_l - dev_l) > eps) {
      const double slope_dev = cj[1] * sqrt3;
      limited.emplace_back(j, minmod3(slope_dev, dp, dm) / sqrt3);
    }
  }
  for (const auto& [j, c1] : limited) {
    double* cj = f.cell(j);
    cj[1] = c1;
    for (int m = 2; m <= k; ++m) cj[m] = 0.0;
  }
}

}  // namespace geldg
