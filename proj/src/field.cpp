#include "geldg/field.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "geldg/basis.hpp"
#include "geldg/quadrature.hpp"

namespace geldg {

double DGField::eval_in_cell(int j, double x) const {
  double psi[kMaxBasisDegree + 1];
  basis_all(k, grid.ref_coord(j, x), psi);
  const double* cj = cell(j);
  double v = 0.0;
  for (int m = 0; m <= k; ++m) v += cj[m] * psi[m];
  return v;
}

double eval(const DGField& f, double x) {
  const double y = f.grid.wrap(x);
  return f.eval_in_cell(f.grid.cell_of(y), y);
}

double eval_minus(const DGField& f, int e) {
  const int n = f.grid.n();
  int j = e - 1;
  if (j < 0) {
    if (f.grid.bc != BcKind::periodic) {
      throw std::out_of_range("eval_minus: no left cell at boundary edge");
    }
    j = n - 1;
  }
  double psi[kMaxBasisDegree + 1];
  basis_all(f.k, 0.5, psi);
  const double* cj = f.cell(j);
  double v = 0.0;
  for (int m = 0; m <= f.k; ++m) v += cj[m] * psi[m];
  return v;
}

double eval_plus(const DGField& f, int e) {
  const int n = f.grid.n();
  int j = e;
  if (j >= n) {
    if (f.grid.bc != BcKind::periodic) {
      throw std::out_of_range("eval_plus: no right cell at boundary edge");
    }
    j = 0;
  }
  double psi[kMaxBasisDegree + 1];
  basis_all(f.k, -0.5, psi);
  const double* cj = f.cell(j);
  double v = 0.0;
  for (int m = 0; m <= f.k; ++m) v += cj[m] * psi[m];
  return v;
}

DGField project(const ScalarFn& fn, const Grid1D& grid, int k) {
  DGField f(grid, k);
  const GaussRule& q = gauss_legendre(k + 2);
  double psi[kMaxBasisDegree + 1];
  for (int j = 0; j < grid.n(); ++j) {
    double* cj = f.cell(j);
    for (int i = 0; i < q.n; ++i) {
      const double r = 0.5 * q.nodes[i];
      const double x = grid.center(j) + r * grid.dx(j);
      const double v = fn(x);
      basis_all(k, r, psi);
      // int psi_l psi_m dr = delta, so c_m = int f psi_m dr over [-1/2,1/2].
      const double w = 0.5 * q.weights[i];
      for (int m = 0; m <= k; ++m) cj[m] += w * v * psi[m];
    }
  }
  return f;
}

void integrate_all_against_shifted(const DGField& f, double a, double b,
                                   int j_test, double s, double* out) {
  if (a > b) throw std::invalid_argument("integrate_against_shifted: a > b");
  for (int m = 0; m <= f.k; ++m) out[m] = 0.0;
  if (a == b) return;
  const Grid1D& g = f.grid;
  const double l = g.length();

  // Split [a,b] at every background edge it crosses, working in unwrapped
  // coordinates; each segment then lies inside one (possibly wrapped) cell.
  const GaussRule& q = gauss_legendre(f.k + 2);
  double psi_u[kMaxBasisDegree + 1], psi_t[kMaxBasisDegree + 1];
  double seg_lo = a;
  while (seg_lo < b - 1e-14 * (1.0 + std::abs(b))) {
    // Cell containing the segment start (resolve edge-coincidence upward).
    double y = g.wrap(seg_lo);
    double offset = seg_lo - y;  // multiple of the period for periodic grids
    int j = g.cell_of(y);
    // Nudge onto the next cell if seg_lo sits on that cell's right edge.
    if (y >= g.edge(j + 1) - 1e-13 * (1.0 + std::abs(g.edge(j + 1)))) {
      j += 1;
      if (j == g.n()) {
        if (g.bc != BcKind::periodic) {
          throw std::out_of_range("integrate_against_shifted: outside domain");
        }
        j = 0;
        offset += l;
      }
    }
    const double seg_hi = std::min(b, g.edge(j + 1) + offset);
    const double mid = 0.5 * (seg_lo + seg_hi), half = 0.5 * (seg_hi - seg_lo);
    if (half > 0.0) {
      const double* cj = f.cell(j);
      for (int i = 0; i < q.n; ++i) {
        const double x = mid + half * q.nodes[i];
        basis_all(f.k, g.ref_coord(j, x - offset), psi_u);
        basis_all(f.k, g.ref_coord(j_test, x + s), psi_t);
        double u = 0.0;
        for (int mm = 0; mm <= f.k; ++mm) u += cj[mm] * psi_u[mm];
        const double wu = half * q.weights[i] * u;
        for (int m = 0; m <= f.k; ++m) out[m] += wu * psi_t[m];
      }
    }
    seg_lo = seg_hi;
  }
}

double integrate_against_shifted(const DGField& f, double a, double b,
                                 int j_test, double s, int m) {
  if (m < 0 || m > f.k) {
    throw std::invalid_argument("integrate_against_shifted: bad test index");
  }
  double all[kMaxBasisDegree + 1];
  integrate_all_against_shifted(f, a, b, j_test, s, all);
  return all[m];
}

Norms error_norms(const DGField& f, const ScalarFn& exact) {
  const GaussRule& q = gauss_legendre(f.k + 3);
  double psi[kMaxBasisDegree + 1];
  Norms out;
  for (int j = 0; j < f.grid.n(); ++j) {
    const double* cj = f.cell(j);
    const double h = f.grid.dx(j);
    for (int i = 0; i < q.n; ++i) {
      const double r = 0.5 * q.nodes[i];
      const double x = f.grid.center(j) + r * h;
      basis_all(f.k, r, psi);
      double u = 0.0;
      for (int m = 0; m <= f.k; ++m) u += cj[m] * psi[m];
      const double e = std::abs(u - exact(x));
      const double w = 0.5 * q.weights[i] * h;
      out.l1 += w * e;
      out.l2 += w * e * e;
      out.linf = std::max(out.linf, e);
    }
  }
  // Domain-averaged norms (the convention of the reported error tables).
  out.l1 /= f.grid.length();
  out.l2 = std::sqrt(out.l2 / f.grid.length());
  return out;
}

double total_mass(const DGField& f) {
  double mass = 0.0;
  for (int j = 0; j < f.grid.n(); ++j) mass += f.c(j, 0) * f.grid.dx(j);
  return mass;
}

void write_csv(const DGField& f, std::ostream& os) {
  os << "j,x_center";
  for (int m = 0; m <= f.k; ++m) os << ",c" << m;
  os << "\n";
  os.precision(17);
  for (int j = 0; j < f.grid.n(); ++j) {
    os << j << "," << f.grid.center(j);
    for (int m = 0; m <= f.k; ++m) os << "," << f.c(j, m);
    os << "\n";
  }
}

}  // namespace geldg
