#include "normlab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace normlab::kernels {

namespace {

constexpr std::size_t kBlock = 1024;  // must match the scalar path

struct Neumaier {
  double s = 0.0;
  double c = 0.0;
  void add(double v) {
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  double total() const { return s + c; }
};

inline double abs2(cd z) { return z.real() * z.real() + z.imag() * z.imag(); }

inline double pow_half_scalar(double x, double half) {
  if (x == 0.0) return 0.0;
  if (half == 1.0) return x;
  if (half == 2.0) return x * x;
  return std::pow(x, half);
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

// ---------------------------------------------------------------------------
// Vector log / exp (fdlibm polynomial schemes), double precision, x > 0.
// ---------------------------------------------------------------------------

inline __m256d vlog_pd(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d Lg1 = _mm256_set1_pd(6.666666666666735130e-01);
  const __m256d Lg2 = _mm256_set1_pd(3.999999999940941908e-01);
  const __m256d Lg3 = _mm256_set1_pd(2.857142874366239149e-01);
  const __m256d Lg4 = _mm256_set1_pd(2.222219843214978396e-01);
  const __m256d Lg5 = _mm256_set1_pd(1.818357216161805012e-01);
  const __m256d Lg6 = _mm256_set1_pd(1.531383769920937332e-01);
  const __m256d Lg7 = _mm256_set1_pd(1.479819860511658591e-01);

  // Scale subnormals into the normal range: x' = x * 2^108, e -= 108.
  const __m256d dbl_min = _mm256_set1_pd(2.2250738585072014e-308);
  const __m256d sub_mask = _mm256_cmp_pd(x, dbl_min, _CMP_LT_OQ);
  const __m256d scaled = _mm256_mul_pd(x, _mm256_set1_pd(0x1.0p108));
  x = _mm256_blendv_pd(x, scaled, sub_mask);
  __m256d e_adjust = _mm256_and_pd(sub_mask, _mm256_set1_pd(-108.0));

  // Exponent as a double via the 2^52 bias trick.
  __m256i bits = _mm256_castpd_si256(x);
  __m256i expo = _mm256_srli_epi64(bits, 52);
  expo = _mm256_or_si256(expo, _mm256_set1_epi64x(0x4330000000000000LL));
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(expo),
                            _mm256_set1_pd(4503599627370496.0 + 1023.0));
  e = _mm256_add_pd(e, e_adjust);

  // Mantissa m in [1,2); fold to [sqrt2/2, sqrt2).
  __m256i mbits = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
      _mm256_set1_epi64x(0x3FF0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mbits);
  const __m256d fold = _mm256_cmp_pd(m, sqrt2, _CMP_GE_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, half), fold);
  e = _mm256_add_pd(e, _mm256_and_pd(fold, one));

  const __m256d f = _mm256_sub_pd(m, one);
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(two, f));
  const __m256d z = _mm256_mul_pd(s, s);
  const __m256d w = _mm256_mul_pd(z, z);
  __m256d t1 = _mm256_fmadd_pd(w, Lg6, Lg4);
  t1 = _mm256_fmadd_pd(w, t1, Lg2);
  t1 = _mm256_mul_pd(w, t1);
  __m256d t2 = _mm256_fmadd_pd(w, Lg7, Lg5);
  t2 = _mm256_fmadd_pd(w, t2, Lg3);
  t2 = _mm256_fmadd_pd(w, t2, Lg1);
  t2 = _mm256_mul_pd(z, t2);
  const __m256d R = _mm256_add_pd(t1, t2);
  const __m256d hfsq = _mm256_mul_pd(half, _mm256_mul_pd(f, f));

  // e*ln2_hi - ((hfsq - (s*(hfsq+R) + e*ln2_lo)) - f)
  __m256d r = _mm256_mul_pd(s, _mm256_add_pd(hfsq, R));
  r = _mm256_fmadd_pd(e, ln2_lo, r);
  r = _mm256_sub_pd(_mm256_sub_pd(hfsq, r), f);
  return _mm256_fmsub_pd(e, ln2_hi, r);
}

inline __m256d vexp_scale(__m256d y, __m256d kd) {
  // Split k = k1 + k2 with k1 = trunc(k/2); both halves stay in the
  // normal exponent range for |k| <= 2092.
  const __m256d half_k = _mm256_round_pd(_mm256_mul_pd(kd, _mm256_set1_pd(0.5)),
                                         _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
  const __m256d rest = _mm256_sub_pd(kd, half_k);
  const __m256d bias = _mm256_set1_pd(1023.0);
  const __m256d mag = _mm256_set1_pd(4503599627370496.0);  // 2^52
  // 2^k via exponent-field construction: ((k + 1023) << 52)
  __m256i e1 = _mm256_castpd_si256(_mm256_add_pd(_mm256_add_pd(half_k, bias), mag));
  e1 = _mm256_slli_epi64(_mm256_and_si256(e1, _mm256_set1_epi64x(0xFFFFF)), 52);
  __m256i e2 = _mm256_castpd_si256(_mm256_add_pd(_mm256_add_pd(rest, bias), mag));
  e2 = _mm256_slli_epi64(_mm256_and_si256(e2, _mm256_set1_epi64x(0xFFFFF)), 52);
  y = _mm256_mul_pd(y, _mm256_castsi256_pd(e1));
  return _mm256_mul_pd(y, _mm256_castsi256_pd(e2));
}

// (x)^half for x >= 0, with x == 0 -> 0.
inline __m256d vpow_half(__m256d x, __m256d half) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d pos = _mm256_cmp_pd(x, zero, _CMP_GT_OQ);
  const __m256d safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), x, pos);
  const __m256d lx = vlog_pd(safe);
  const __m256d arg0 = _mm256_mul_pd(half, lx);
  __m256d arg = _mm256_max_pd(arg0, _mm256_set1_pd(-745.0));
  arg = _mm256_min_pd(arg, _mm256_set1_pd(709.7));
  const __m256d kd = _mm256_round_pd(_mm256_mul_pd(arg, _mm256_set1_pd(1.44269504088896338700e+00)),
                                     _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d hi = _mm256_fnmadd_pd(kd, _mm256_set1_pd(6.93147180369123816490e-01), arg);
  const __m256d lo = _mm256_mul_pd(kd, _mm256_set1_pd(1.90821492927058770002e-10));
  const __m256d r = _mm256_sub_pd(hi, lo);
  const __m256d t = _mm256_mul_pd(r, r);
  __m256d c = _mm256_fmadd_pd(t, _mm256_set1_pd(4.13813679705723846039e-08),
                              _mm256_set1_pd(-1.65339022054652515390e-06));
  c = _mm256_fmadd_pd(t, c, _mm256_set1_pd(6.61375632143793436117e-05));
  c = _mm256_fmadd_pd(t, c, _mm256_set1_pd(-2.77777777770155933842e-03));
  c = _mm256_fmadd_pd(t, c, _mm256_set1_pd(1.66666666666666019037e-01));
  c = _mm256_fnmadd_pd(t, c, r);
  const __m256d corr =
      _mm256_div_pd(_mm256_mul_pd(r, c), _mm256_sub_pd(_mm256_set1_pd(2.0), c));
  __m256d y = _mm256_sub_pd(_mm256_set1_pd(1.0),
                            _mm256_sub_pd(_mm256_sub_pd(lo, corr), hi));
  y = vexp_scale(y, kd);
  return _mm256_and_pd(y, pos);
}

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

const __m256d kConjMask = _mm256_castsi256_pd(
    _mm256_set_epi64x(0x8000000000000000LL, 0, 0x8000000000000000LL, 0));

// |z|^2 for 4 consecutive complex values, packed as [z0 z2 z1 z3].
inline __m256d abs2_packed(const cd* z) {
  const __m256d v0 = _mm256_loadu_pd(reinterpret_cast<const double*>(z));
  const __m256d v1 = _mm256_loadu_pd(reinterpret_cast<const double*>(z + 2));
  return _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
}

double sum_abs_pow_impl(const cd* z, std::size_t n, double half) {
  if (half == 1.0) {
    // falls through to sum_abs2 semantics
    Neumaier acc;
    for (std::size_t i = 0; i < n; i += kBlock) {
      const std::size_t end = std::min(n, i + kBlock);
      std::size_t j = i;
      __m256d vac = _mm256_setzero_pd();
      for (; j + 4 <= end; j += 4) vac = _mm256_add_pd(vac, abs2_packed(z + j));
      double b = hsum(vac);
      for (; j < end; ++j) b += abs2(z[j]);
      acc.add(b);
    }
    return acc.total();
  }
  if (half == 2.0) {
    Neumaier acc;
    for (std::size_t i = 0; i < n; i += kBlock) {
      const std::size_t end = std::min(n, i + kBlock);
      std::size_t j = i;
      __m256d vac = _mm256_setzero_pd();
      for (; j + 4 <= end; j += 4) {
        const __m256d a2 = abs2_packed(z + j);
        vac = _mm256_fmadd_pd(a2, a2, vac);
      }
      double b = hsum(vac);
      for (; j < end; ++j) {
        const double a2 = abs2(z[j]);
        b += a2 * a2;
      }
      acc.add(b);
    }
    return acc.total();
  }
  const __m256d vhalf = _mm256_set1_pd(half);
  Neumaier acc;
  for (std::size_t i = 0; i < n; i += kBlock) {
    const std::size_t end = std::min(n, i + kBlock);
    std::size_t j = i;
    __m256d vac = _mm256_setzero_pd();
    for (; j + 4 <= end; j += 4)
      vac = _mm256_add_pd(vac, vpow_half(abs2_packed(z + j), vhalf));
    double b = hsum(vac);
    for (; j < end; ++j) b += pow_half_scalar(abs2(z[j]), half);
    acc.add(b);
  }
  return acc.total();
}

double sum_abs2_impl(const cd* z, std::size_t n) {
  return sum_abs_pow_impl(z, n, 1.0);
}

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

void pointwise_mul_impl(cd* dst, const cd* a, const cd* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
    const __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(dst + i), cmul(vb, va));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    dst[i] = cd{ar * br - ai * bi, ar * bi + ai * br};
  }
}

void pointwise_mul_conj_impl(cd* dst, const cd* a, const cd* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
    va = _mm256_xor_pd(va, kConjMask);
    const __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(dst + i), cmul(vb, va));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    dst[i] = cd{ar * br + ai * bi, ar * bi - ai * br};
  }
}

cd dot_bilinear_impl(const cd* a, const cd* b, std::size_t n) {
  Neumaier re, im;
  for (std::size_t i = 0; i < n; i += kBlock) {
    const std::size_t end = std::min(n, i + kBlock);
    std::size_t j = i;
    __m256d vac = _mm256_setzero_pd();
    for (; j + 2 <= end; j += 2) {
      const __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + j));
      const __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + j));
      vac = _mm256_add_pd(vac, cmul(va, vb));
    }
    __m128d s = _mm_add_pd(_mm256_castpd256_pd128(vac), _mm256_extractf128_pd(vac, 1));
    double br = _mm_cvtsd_f64(s);
    double bi = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
    for (; j < end; ++j) {
      const double ar = a[j].real(), ai = a[j].imag();
      const double xr = b[j].real(), xi = b[j].imag();
      br += ar * xr - ai * xi;
      bi += ar * xi + ai * xr;
    }
    re.add(br);
    im.add(bi);
  }
  return {re.total(), im.total()};
}

cd dot_conj_impl(const cd* a, const cd* b, std::size_t n) {
  Neumaier re, im;
  for (std::size_t i = 0; i < n; i += kBlock) {
    const std::size_t end = std::min(n, i + kBlock);
    std::size_t j = i;
    __m256d vac = _mm256_setzero_pd();
    for (; j + 2 <= end; j += 2) {
      const __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + j));
      __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + j));
      vb = _mm256_xor_pd(vb, kConjMask);
      vac = _mm256_add_pd(vac, cmul(va, vb));
    }
    __m128d s = _mm_add_pd(_mm256_castpd256_pd128(vac), _mm256_extractf128_pd(vac, 1));
    double br = _mm_cvtsd_f64(s);
    double bi = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
    for (; j < end; ++j) {
      const double ar = a[j].real(), ai = a[j].imag();
      const double xr = b[j].real(), xi = b[j].imag();
      br += ar * xr + ai * xi;
      bi += ai * xr - ar * xi;
    }
    re.add(br);
    im.add(bi);
  }
  return {re.total(), im.total()};
}

void abs_pow_scale_conj_impl(cd* dst, const cd* z, std::size_t n, double half,
                             double scale) {
  const __m256d vhalf = _mm256_set1_pd(half);
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w = _mm256_mul_pd(vpow_half(abs2_packed(z + i), vhalf), vscale);
    // packed order is [w0 w2 w1 w3]; expand to pairwise duplicates
    const __m256d lo = _mm256_permute4x64_pd(w, 0xA0);  // [w0 w0 w1 w1]
    const __m256d hi = _mm256_permute4x64_pd(w, 0xF5);  // [w2 w2 w3 w3]
    __m256d v0 = _mm256_loadu_pd(reinterpret_cast<const double*>(z + i));
    __m256d v1 = _mm256_loadu_pd(reinterpret_cast<const double*>(z + i + 2));
    v0 = _mm256_xor_pd(v0, kConjMask);
    v1 = _mm256_xor_pd(v1, kConjMask);
    _mm256_storeu_pd(reinterpret_cast<double*>(dst + i), _mm256_mul_pd(v0, lo));
    _mm256_storeu_pd(reinterpret_cast<double*>(dst + i + 2), _mm256_mul_pd(v1, hi));
  }
  for (; i < n; ++i) {
    const double w = pow_half_scalar(abs2(z[i]), half) * scale;
    dst[i] = cd{z[i].real() * w, -z[i].imag() * w};
  }
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops ops{sum_abs_pow_impl,     sum_abs2_impl,
                       pointwise_mul_impl,   pointwise_mul_conj_impl,
                       dot_bilinear_impl,    dot_conj_impl,
                       abs_pow_scale_conj_impl, "avx2"};
  static const Ops* selected = []() -> const Ops* {
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
      return &ops;
    return nullptr;
  }();
  return selected;
}

}

#else

namespace normlab::kernels {
const Ops* avx2_ops() { return nullptr; }
}

#endif
