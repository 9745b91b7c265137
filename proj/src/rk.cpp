#include "geldg/rk.hpp"

#include <array>
#include <stdexcept>

namespace geldg {

namespace {

RKTableau make(int order) {
  RKTableau t;
  t.order = order;
  switch (order) {
    case 1:
      t.stages = 1;
      t.alpha = {{1.0}};
      t.beta = {{1.0}};
      t.d = {0.0, 1.0};
      break;
    case 2:
      t.stages = 2;
      t.alpha = {{1.0}, {0.5, 0.5}};
      t.beta = {{1.0}, {0.0, 0.5}};
      t.d = {0.0, 1.0, 1.0};
      break;
    case 3:
      t.stages = 3;
      t.alpha = {{1.0}, {0.75, 0.25}, {1.0 / 3.0, 0.0, 2.0 / 3.0}};
      t.beta = {{1.0}, {0.0, 0.25}, {0.0, 0.0, 2.0 / 3.0}};
      t.d = {0.0, 1.0, 0.5, 1.0};
      break;
    case 4:
      t.stages = 4;
      t.alpha = {{1.0},
                 {1.0, 0.0},
                 {1.0, 0.0, 0.0},
                 {-1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0}};
      t.beta = {{0.5},
                {0.0, 0.5},
                {0.0, 0.0, 1.0},
                {0.0, 0.0, 0.0, 1.0 / 6.0}};
      t.d = {0.0, 0.5, 0.5, 1.0, 1.0};
      break;
    default:
      throw std::invalid_argument("ssp_rk: order must be 1..4");
  }
  // Unroll the recursion to get the weight of each stage residual in the
  // final update; the alpha rows sum to 1, so the state weight telescopes.
  std::vector<std::vector<double>> w(t.stages + 1);
  w[0] = {};
  for (int i = 1; i <= t.stages; ++i) {
    w[i].assign(i, 0.0);
    for (int l = 0; l < i; ++l) {
      w[i][l] += t.beta[i - 1][l];
      for (size_t ll = 0; ll < w[l].size(); ++ll) {
        w[i][ll] += t.alpha[i - 1][l] * w[l][ll];
      }
    }
  }
  t.flux_weights = w[t.stages];
  return t;
}

}  // namespace

const RKTableau& ssp_rk(int order) {
  static const std::array<RKTableau, 4> cache = {make(1), make(2), make(3),
                                                 make(4)};
  if (order < 1 || order > 4) {
    throw std::invalid_argument("ssp_rk: order must be 1..4");
  }
  return cache[order - 1];
}

}  // namespace geldg
