#pragma once

#include <functional>
#include <string>
#include <vector>

#include "normlab/grid.hpp"
#include "normlab/trig_poly.hpp"

namespace normlab {

/// A multiplication symbol a, either coefficient-specified (finite Laurent
/// band, used exactly) or sampled through a pointwise evaluator (for
/// piecewise symbols), together with its known sup norm.
class Symbol {
 public:
  enum class Kind { Laurent, Sampled };

  /// e_m(z) = z^m; sup norm 1, exact.
  static Symbol e(int m);

  /// Gohberg-Krupnik piecewise symbol sin(pi/p) +/- i cos(pi/p) on the upper
  /// half circle and the conjugate branch on the lower; unimodular, so the
  /// sup norm is exactly 1. The two jump points carry the limit from
  /// theta > 0 (a measure-zero choice that no norm can see).
  static Symbol gk(double p, int sign);

  /// a = e_{-n} h with analytic h: finite Laurent band, so Toeplitz
  /// application stays exact; the sup norm is estimated on a dense grid and
  /// flagged approximate.
  static Symbol cph(int n, const TrigPoly& h);

  /// General finite-band symbol. When `exact_sup` >= 0 it is trusted,
  /// otherwise a padded dense-grid estimate is used (flagged approximate).
  static Symbol laurent(TrigPoly a, double exact_sup = -1.0);

  Kind kind() const { return kind_; }
  const TrigPoly& laurent_coeffs() const;
  /// Pointwise samples of a on g. Laurent symbols require an alias-free grid.
  std::vector<cd> samples_on(const GridConfig& g) const;

  double sup_norm() const { return sup_norm_; }
  bool sup_exact() const { return sup_exact_; }
  /// Laurent band endpoints (0 for sampled symbols).
  int k_min() const;
  int k_max() const;

  const std::string& description() const { return description_; }

 private:
  Symbol() = default;

  Kind kind_ = Kind::Laurent;
  TrigPoly a_;
  std::function<cd(double)> eval_;
  double sup_norm_ = 0.0;
  bool sup_exact_ = false;
  std::string description_;
};

}
