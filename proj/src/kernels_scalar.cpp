#include "normlab/kernels.hpp"

#include <cmath>

namespace normlab::kernels {

namespace {

constexpr std::size_t kBlock = 1024;

// Neumaier-compensated accumulator for block sums.
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

inline double abs2(cd z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

inline double pow_half(double x, double half) {
  if (x == 0.0) return 0.0;
  if (half == 1.0) return x;
  if (half == 2.0) return x * x;
  return std::pow(x, half);
}

double sum_abs_pow_impl(const cd* z, std::size_t n, double half) {
  Neumaier acc;
  for (std::size_t i = 0; i < n; i += kBlock) {
    const std::size_t end = std::min(n, i + kBlock);
    double b = 0.0;
    for (std::size_t j = i; j < end; ++j) b += pow_half(abs2(z[j]), half);
    acc.add(b);
  }
  return acc.total();
}

double sum_abs2_impl(const cd* z, std::size_t n) {
  Neumaier acc;
  for (std::size_t i = 0; i < n; i += kBlock) {
    const std::size_t end = std::min(n, i + kBlock);
    double b = 0.0;
    for (std::size_t j = i; j < end; ++j) b += abs2(z[j]);
    acc.add(b);
  }
  return acc.total();
}

void pointwise_mul_impl(cd* dst, const cd* a, const cd* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    dst[i] = cd{ar * br - ai * bi, ar * bi + ai * br};
  }
}

void pointwise_mul_conj_impl(cd* dst, const cd* a, const cd* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    dst[i] = cd{ar * br + ai * bi, ar * bi - ai * br};
  }
}

cd dot_bilinear_impl(const cd* a, const cd* b, std::size_t n) {
  Neumaier re, im;
  for (std::size_t i = 0; i < n; i += kBlock) {
    const std::size_t end = std::min(n, i + kBlock);
    double br = 0.0, bi = 0.0;
    for (std::size_t j = i; j < end; ++j) {
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
    double br = 0.0, bi = 0.0;
    for (std::size_t j = i; j < end; ++j) {
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
  for (std::size_t i = 0; i < n; ++i) {
    const double w = pow_half(abs2(z[i]), half) * scale;
    dst[i] = cd{z[i].real() * w, -z[i].imag() * w};
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{sum_abs_pow_impl,     sum_abs2_impl,
                       pointwise_mul_impl,   pointwise_mul_conj_impl,
                       dot_bilinear_impl,    dot_conj_impl,
                       abs_pow_scale_conj_impl, "scalar"};
  return ops;
}

}
