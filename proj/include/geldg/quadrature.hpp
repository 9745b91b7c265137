#pragma once

#include <vector>

namespace geldg {

// Gauss-Legendre rule on [-1,1]: exact for polynomials of degree <= 2n-1.
struct GaussRule {
  int n = 0;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive, symmetric, sum to 2
};

// Returns a cached rule; 1 <= n <= 16, otherwise std::invalid_argument.
const GaussRule& gauss_legendre(int n);

}  // namespace geldg
