#include "geldg/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace geldg {

namespace {

constexpr int kMaxNodes = 16;

GaussRule make_rule(int n) {
  GaussRule rule;
  rule.n = n;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  // Newton iteration on P_n, roots seeded by the Chebyshev-like estimate.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int m = 1; m < n; ++m) {
        double p2 = ((2 * m + 1) * x * p1 - m * p0) / (m + 1);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = -x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > kMaxNodes) {
    throw std::invalid_argument("gauss_legendre: node count must be in [1,16]");
  }
  static const std::array<GaussRule, kMaxNodes> cache = [] {
    std::array<GaussRule, kMaxNodes> rules;
    for (int i = 0; i < kMaxNodes; ++i) rules[i] = make_rule(i + 1);
    return rules;
  }();
  return cache[n - 1];
}

}  // namespace geldg
