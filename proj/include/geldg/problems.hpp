#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geldg/limiter.hpp"
#include "geldg/solver2d.hpp"

namespace geldg {

// A registered transport test problem (1D or 2D).
struct ProblemSpec {
  std::string name;
  int dim = 1;
  double xa = 0.0, xb = 1.0;
  double ya = 0.0, yb = 1.0;  // 2D only
  BcKind bc = BcKind::periodic;

  Velocity a1;                        // 1D velocity a(x,t)
  Velocity2D a2, b2;                  // 2D velocity field
  ScalarFn u0_1d;
  std::function<double(double, double)> u0_2d;

  bool has_exact = false;
  std::function<double(double, double)> exact_1d;         // (x,t)
  std::function<double(double, double, double)> exact_2d;  // (x,y,t)

  std::function<double(double)> boundary_f;  // inflow data at x_a

  double a_max = 1.0, b_max = 0.0;
  Bounds bounds;        // min/max of the initial data
  bool mpp_valid = false;  // constant-coefficient transport only
};

ProblemSpec builtin(const std::string& name);
std::vector<std::string> builtin_names();

// Exact solution of u_t + (sin(x) u)_x = 0 with u(x,0) = 1, evaluated in a
// form that is stable through the removable singularities at sin(x) = 0.
double varcoef_exact(double x, double t);

}  // namespace geldg
