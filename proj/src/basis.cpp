#include "geldg/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace geldg {

namespace {

inline void check_args(int k, int m) {
  if (k < 0 || k > kMaxBasisDegree) {
    throw std::invalid_argument("basis: degree k out of range");
  }
  if (m < 0 || m > k) {
    throw std::invalid_argument("basis: index m out of range [0,k]");
  }
}

inline double scale(int m) { return std::sqrt(2.0 * m + 1.0); }

}  // namespace

void basis_all(int k, double r, double* out) {
  const double z = 2.0 * r;
  double p0 = 1.0, p1 = z;
  out[0] = 1.0;
  if (k >= 1) out[1] = scale(1) * z;
  for (int m = 1; m < k; ++m) {
    const double p2 = ((2 * m + 1) * z * p1 - m * p0) / (m + 1);
    out[m + 1] = scale(m + 1) * p2;
    p0 = p1;
    p1 = p2;
  }
}

void basis_deriv_all(int k, double r, double* out) {
  const double z = 2.0 * r;
  // P'_{m+1}(z) = P'_{m-1}(z) + (2m+1) P_m(z); chain rule brings a factor 2.
  double p0 = 1.0, p1 = z;
  double d0 = 0.0, d1 = 1.0;
  out[0] = 0.0;
  if (k >= 1) out[1] = scale(1) * 2.0;
  for (int m = 1; m < k; ++m) {
    const double p2 = ((2 * m + 1) * z * p1 - m * p0) / (m + 1);
    const double d2 = d0 + (2 * m + 1) * p1;
    out[m + 1] = scale(m + 1) * 2.0 * d2;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
  }
}

double basis_eval(int k, int m, double r) {
  check_args(k, m);
  double vals[kMaxBasisDegree + 1];
  basis_all(m, r, vals);
  return vals[m];
}

double basis_deriv(int k, int m, double r) {
  check_args(k, m);
  double vals[kMaxBasisDegree + 1];
  basis_deriv_all(m, r, vals);
  return vals[m];
}

}  // namespace geldg
