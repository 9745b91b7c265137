#pragma once

#include <vector>

namespace geldg {

// Low-storage SSP Runge-Kutta data in Shu-Osher form: stage i is built from
//   sum_{l<i} [ alpha_{il} * (mass-weighted state l) + beta_{il} * dt * L_l ],
// with every alpha row summing to 1. d[l] is the fractional stage time of
// state l (d[0] = 0, d[stages] = 1).
struct RKTableau {
  int order = 0;
  int stages = 0;
  std::vector<std::vector<double>> alpha;  // stages rows, row i has i+1 entries
  std::vector<std::vector<double>> beta;
  std::vector<double> d;             // stages+1 stage-time fractions
  std::vector<double> flux_weights;  // effective per-stage weights of L in the
                                     // final update (sum to 1)
};

// order 1 = forward Euler (kept for geometric-conservation checks),
// 2/3/4 = the standard SSP schemes.
const RKTableau& ssp_rk(int order);

}  // namespace geldg
