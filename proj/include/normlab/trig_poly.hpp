#pragma once

#include <complex>
#include <vector>

#include "normlab/errors.hpp"

namespace normlab {

using cd = std::complex<double>;

/// Finitely supported two-sided Fourier coefficient sequence.
///
/// Coefficients are stored densely over [k_min, k_max] with exact-zero
/// endpoints trimmed, so the stored range is minimal; the default-constructed
/// value is the zero polynomial (empty storage).
class TrigPoly {
 public:
  TrigPoly() = default;

  /// e_m scaled by c: single coefficient c at index m.
  static TrigPoly basis(int m, cd c = cd{1.0, 0.0});

  /// Dense coefficients for indices k_min, k_min+1, ...; trims zeros.
  static TrigPoly from_range(int k_min, std::vector<cd> coeffs);

  bool is_zero() const { return c_.empty(); }
  /// k_min/k_max of the minimal stored range; zero polynomial reports [0, -1].
  int k_min() const { return k_min_; }
  int k_max() const { return k_min_ + static_cast<int>(c_.size()) - 1; }
  /// max |k| over the support (0 for the zero polynomial).
  int band() const;
  bool is_analytic() const { return c_.empty() || k_min_ >= 0; }

  cd coeff(int k) const;
  const std::vector<cd>& raw() const { return c_; }

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly operator*(cd s) const;
  /// Laurent product (coefficient convolution); exact.
  TrigPoly multiply(const TrigPoly& o) const;
  /// Multiplication by e_m: shifts every index by m.
  TrigPoly shifted(int m) const;
  TrigPoly conjugate_reflect() const;  // coefficients conj(c(-k))

  /// Keeps indices in [lo, hi].
  TrigPoly truncated(int lo, int hi) const;

  double max_abs_coeff() const;

 private:
  int k_min_ = 0;
  std::vector<cd> c_;
};

/// f(z) -> f(z^N): places f-hat(k) at index k*N. Dense storage; throws
/// ArgumentError when N < 1 or the dilated span would be absurdly wide.
TrigPoly compose_eN(const TrigPoly& f, int N);

}
