#include "normlab/constants.hpp"

#include <cmath>
#include <numbers>

#include "normlab/errors.hpp"

namespace normlab {

namespace {

double cp_objective(double alpha, double p) {
  const double q = 1.0 / (p - 1.0);
  const double beta = 1.0 - alpha;
  const double first = std::pow(std::pow(alpha, p - 1.0) + std::pow(beta, p - 1.0), 1.0 / p);
  const double second = std::pow(std::pow(alpha, q) + std::pow(beta, q), 1.0 - 1.0 / p);
  return first * second;
}

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw ArgumentError("constants: p must lie in (1, inf)");
}

}  // namespace

double cp(double p) {
  check_p(p);
  // Coarse scan of (0, 1/2]; the endpoint 0 is avoided because the second
  // factor has a 0^negative form for p < 2.
  constexpr int kGrid = 10000;
  const double lo = 1e-12;
  const double hi = 0.5;
  double best = -1.0;
  int best_i = 0;
  for (int i = 0; i <= kGrid; ++i) {
    const double a = lo + (hi - lo) * i / kGrid;
    const double v = cp_objective(a, p);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best_i - 1) / kGrid;
  double b = lo + (hi - lo) * std::min(kGrid, best_i + 1) / kGrid;
  // Golden-section to interval width 1e-12; the objective flattens near
  // p = 2 but the maximum value converges quadratically in the width.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = cp_objective(c, p);
  double fd = cp_objective(d, p);
  while (b - a > 1e-12) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = cp_objective(c, p);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = cp_objective(d, p);
    }
  }
  return std::max({best, fc, fd});
}

ConstantsRow reference_constants(double p) {
  check_p(p);
  ConstantsRow row;
  row.p = p;
  row.p_conjugate = p / (p - 1.0);
  row.riesz = 1.0 / std::sin(std::numbers::pi / p);
  row.two_power = std::pow(2.0, std::abs(1.0 - 2.0 / p));
  row.c_p = cp(p);
  return row;
}

}
