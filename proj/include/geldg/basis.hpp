#pragma once

namespace geldg {

// Scaled Legendre basis on the reference cell r in [-1/2, 1/2]:
//   psi_m(r) = sqrt(2m+1) * P_m(2r),
// so that int_{-1/2}^{1/2} psi_l psi_m dr = delta_lm and psi_0 == 1.
// Evaluation outside [-1/2,1/2] is the natural polynomial extension.
inline constexpr int kMaxBasisDegree = 8;

double basis_eval(int k, int m, double r);   // throws on m<0, m>k, k>kMaxBasisDegree
double basis_deriv(int k, int m, double r);  // d psi_m / dr, same checks

// Unchecked bulk evaluation of psi_0..psi_k (and derivatives) at r.
void basis_all(int k, double r, double* out);
void basis_deriv_all(int k, double r, double* out);

}  // namespace geldg
