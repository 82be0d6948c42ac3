#pragma once

#include <cmath>

#include "normlab/errors.hpp"

namespace normlab {

/// Lebesgue exponent p in (1, inf) together with its conjugate p/(p-1).
class PNorm {
 public:
  explicit PNorm(double p) : p_(p) {
    if (!(p > 1.0) || !std::isfinite(p))
      throw UnsupportedExponentError("PNorm: exponent must lie in (1, inf)");
    q_ = p / (p - 1.0);
  }

  double p() const { return p_; }
  double conjugate() const { return q_; }
  PNorm dual() const { return PNorm(q_); }

  /// True when |f|^p is a trigonometric polynomial, so trapezoid quadrature
  /// of it is exact on large enough grids.
  bool even_integer() const {
    const double r = std::round(p_);
    return std::abs(p_ - r) == 0.0 && static_cast<long long>(r) % 2 == 0;
  }

 private:
  double p_;
  double q_;
};

}
