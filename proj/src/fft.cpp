#include "normlab/fft.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <unordered_map>

#include "normlab/kernels.hpp"

namespace normlab::fft {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct Pow2Plan {
  // w[k] = exp(-2*pi*i*k/n) for k < n/2
  std::vector<cd> w;
};

const Pow2Plan& pow2_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, Pow2Plan> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Pow2Plan plan;
  plan.w.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double a = -2.0 * std::numbers::pi * static_cast<double>(k) /
                     static_cast<double>(n);
    plan.w[k] = cd{std::cos(a), std::sin(a)};
  }
  return cache.emplace(n, std::move(plan)).first->second;
}

void fft_pow2(std::vector<cd>& a, bool inv) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  const Pow2Plan& plan = pow2_plan(n);

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        cd w = plan.w[k * step];
        if (inv) w = std::conj(w);
        const cd u = a[i + k];
        const cd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

struct BluesteinPlan {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<cd> w;     // w[j] = exp(-i*pi*j^2/n)
  std::vector<cd> bfft;  // forward FFT of the circular chirp
};

const BluesteinPlan& bluestein_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, BluesteinPlan> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  BluesteinPlan plan;
  plan.n = n;
  plan.m = std::bit_ceil(2 * n - 1);
  plan.w.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    // j^2 mod 2n keeps the trig argument small
    const std::uint64_t q = (static_cast<std::uint64_t>(j) * j) % (2 * n);
    const double a = -std::numbers::pi * static_cast<double>(q) /
                     static_cast<double>(n);
    plan.w[j] = cd{std::cos(a), std::sin(a)};
  }
  std::vector<cd> b(plan.m, cd{0.0, 0.0});
  b[0] = std::conj(plan.w[0]);
  for (std::size_t j = 1; j < n; ++j) {
    b[j] = std::conj(plan.w[j]);
    b[plan.m - j] = std::conj(plan.w[j]);
  }
  fft_pow2(b, false);
  plan.bfft = std::move(b);
  return cache.emplace(n, std::move(plan)).first->second;
}

void bluestein_forward(std::vector<cd>& x) {
  const std::size_t n = x.size();
  const BluesteinPlan& plan = bluestein_plan(n);
  std::vector<cd> a(plan.m, cd{0.0, 0.0});
  kernels::active_ops().pointwise_mul(a.data(), x.data(), plan.w.data(), n);
  fft_pow2(a, false);
  kernels::active_ops().pointwise_mul(a.data(), a.data(), plan.bfft.data(), plan.m);
  fft_pow2(a, true);
  const double scale = 1.0 / static_cast<double>(plan.m);
  for (std::size_t k = 0; k < n; ++k) x[k] = plan.w[k] * a[k] * scale;
}

}  // namespace

void forward(std::vector<cd>& data) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  if (is_pow2(n))
    fft_pow2(data, false);
  else
    bluestein_forward(data);
}

void inverse(std::vector<cd>& data) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  if (is_pow2(n)) {
    fft_pow2(data, true);
    return;
  }
  for (auto& z : data) z = std::conj(z);
  bluestein_forward(data);
  for (auto& z : data) z = std::conj(z);
}

}
