#include "geldg/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace geldg {

namespace {

constexpr double kPi = M_PI;

// Swirling deformation field on [-pi,pi]^2 with time factor
// g(t) = pi cos(pi t / T), T = 1.5; the flow reverses at T/2.
constexpr double kSwirlT = 1.5;

double swirl_g(double t) { return kPi * std::cos(kPi * t / kSwirlT); }

double cosine_bell(double x, double y) {
  const double r0 = 0.3 * kPi;
  const double r = std::hypot(x - 0.3 * kPi, y);
  if (r >= r0) return 0.0;
  const double c = std::cos(0.5 * kPi * r / r0);
  const double c2 = c * c;
  return r0 * c2 * c2 * c2;
}

// Slotted disk + cone + smooth hump. The classical configuration scaled to
// [-pi,pi]^2: radius 0.3*pi, slot width 0.1*pi reaching 0.2*pi above the
// disk center. Reconstructed from the usual rotating-body benchmark; the
// reference prints only a figure.
double three_shapes(double x, double y) {
  const double r0 = 0.3 * kPi;
  const double rd = std::hypot(x, y - 0.5 * kPi);
  if (rd <= r0 && !(std::abs(x) < 0.05 * kPi && y < 0.5 * kPi + 0.2 * kPi)) {
    return 1.0;
  }
  const double rc = std::hypot(x, y + 0.5 * kPi);
  if (rc <= r0) return 1.0 - rc / r0;
  const double rh = std::hypot(x + 0.5 * kPi, y);
  if (rh <= r0) return 0.25 * (1.0 + std::cos(kPi * rh / r0));
  return 0.0;
}

double step_ic(double x) { return (x > 2.0 && x < 7.0) ? 1.0 : 0.0; }

}  // namespace

double varcoef_exact(double x, double t) {
  // u = e^{-t} (1 + tan^2(x/2)) / (1 + e^{-2t} tan^2(x/2)); switching to the
  // cotangent form near x = pi (mod 2pi) keeps every branch finite.
  const double et = std::exp(-t);
  const double c = std::cos(0.5 * x), s = std::sin(0.5 * x);
  if (std::abs(c) >= std::abs(s)) {
    const double tau2 = (s / c) * (s / c);
    return et * (1.0 + tau2) / (1.0 + et * et * tau2);
  }
  const double sig2 = (c / s) * (c / s);
  return et * (sig2 + 1.0) / (sig2 + et * et);
}

ProblemSpec builtin(const std::string& name) {
  ProblemSpec p;
  p.name = name;
  if (name == "const_sin") {
    p.xa = 0.0;
    p.xb = 2.0 * kPi;
    p.a1 = [](double, double) { return 1.0; };
    p.u0_1d = [](double x) { return std::sin(x); };
    p.has_exact = true;
    p.exact_1d = [](double x, double t) { return std::sin(x - t); };
    p.a_max = 1.0;
    p.bounds = {-1.0, 1.0};
    p.mpp_valid = true;
    return p;
  }
  if (name == "varcoef_sin") {
    p.xa = 0.0;
    p.xb = 2.0 * kPi;
    p.a1 = [](double x, double) { return std::sin(x); };
    p.u0_1d = [](double) { return 1.0; };
    p.has_exact = true;
    p.exact_1d = varcoef_exact;
    p.a_max = 1.0;
    p.bounds = {0.0, std::numeric_limits<double>::infinity()};
    return p;
  }
  if (name == "varcoef_inflow") {
    p.xa = 0.5 * kPi;
    p.xb = 2.5 * kPi;
    p.bc = BcKind::inflow;
    p.a1 = [](double x, double) { return std::sin(x); };
    p.u0_1d = [](double) { return 1.0; };
    p.has_exact = true;
    p.exact_1d = varcoef_exact;
    p.boundary_f = [](double t) { return varcoef_exact(0.5 * kPi, t); };
    p.a_max = 1.0;
    p.bounds = {0.0, std::numeric_limits<double>::infinity()};
    return p;
  }
  if (name == "step") {
    p.xa = 0.0;
    p.xb = 90.0;
    p.a1 = [](double, double) { return 1.0; };
    p.u0_1d = step_ic;
    p.has_exact = true;
    p.exact_1d = [](double x, double t) {
      double y = std::fmod(x - t, 90.0);
      if (y < 0) y += 90.0;
      return step_ic(y);
    };
    p.a_max = 1.0;
    p.bounds = {0.0, 1.0};
    p.mpp_valid = true;
    return p;
  }
  if (name == "swirl" || name == "swirl_shapes") {
    p.dim = 2;
    p.xa = -kPi;
    p.xb = kPi;
    p.ya = -kPi;
    p.yb = kPi;
    p.a2 = [](double x, double y, double t) {
      const double c = std::cos(0.5 * x);
      return -c * c * std::sin(y) * swirl_g(t);
    };
    p.b2 = [](double x, double y, double t) {
      const double c = std::cos(0.5 * y);
      return std::sin(x) * c * c * swirl_g(t);
    };
    p.a_max = kPi;
    p.b_max = kPi;
    if (name == "swirl") {
      p.u0_2d = cosine_bell;
      p.has_exact = true;
      // The flow reverses; at t = 1.5 the solution returns to the data.
      p.exact_2d = [](double x, double y, double) { return cosine_bell(x, y); };
      p.bounds = {0.0, 0.3 * kPi};
    } else {
      p.u0_2d = three_shapes;
      p.has_exact = true;
      p.exact_2d = [](double x, double y, double) { return three_shapes(x, y); };
      p.bounds = {0.0, 1.0};
    }
    return p;
  }
  throw std::invalid_argument("builtin: unknown problem '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"const_sin", "varcoef_sin", "varcoef_inflow", "step", "swirl",
          "swirl_shapes"};
}

}  // namespace geldg
