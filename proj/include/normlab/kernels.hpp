#pragma once

#include <complex>
#include <cstddef>

namespace normlab::kernels {

using cd = std::complex<double>;

/// Grid-length primitives behind the norm, pairing and duality-map loops.
///
/// Each entry has a scalar reference implementation and, on x86-64 hosts
/// with AVX2+FMA, a vectorized variant selected once at startup. Sums are
/// accumulated blockwise with Neumaier compensation so the two paths agree
/// to ~1e-13 relative on well-scaled data; the equivalence suite pins this.
struct Ops {
  /// sum_i (re_i^2 + im_i^2)^half. Zero entries contribute zero even for
  /// negative half (the 0^(p-2) * 0 := 0 convention).
  double (*sum_abs_pow)(const cd* z, std::size_t n, double half);
  /// sum_i |z_i|^2
  double (*sum_abs2)(const cd* z, std::size_t n);
  /// dst_i = a_i * b_i; dst may alias a or b exactly.
  void (*pointwise_mul)(cd* dst, const cd* a, const cd* b, std::size_t n);
  /// dst_i = conj(a_i) * b_i
  void (*pointwise_mul_conj)(cd* dst, const cd* a, const cd* b, std::size_t n);
  /// sum_i a_i * b_i (no conjugation)
  cd (*dot_bilinear)(const cd* a, const cd* b, std::size_t n);
  /// sum_i a_i * conj(b_i)
  cd (*dot_conj)(const cd* a, const cd* b, std::size_t n);
  /// dst_i = scale * (|z_i|^2)^half * conj(z_i), and 0 where z_i = 0.
  void (*abs_pow_scale_conj)(cd* dst, const cd* z, std::size_t n, double half,
                             double scale);
  const char* name;
};

const Ops& scalar_ops();

/// nullptr when the build target or host CPU lacks AVX2/FMA.
const Ops* avx2_ops();

/// Runtime-selected implementation. NORMLAB_KERNELS=scalar|avx2 overrides.
const Ops& active_ops();

}
