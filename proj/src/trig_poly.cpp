#include "normlab/trig_poly.hpp"

#include <algorithm>
#include <cmath>

namespace normlab {

namespace {
constexpr long long kMaxDenseSpan = 1LL << 24;
}

TrigPoly TrigPoly::basis(int m, cd c) {
  if (c == cd{0.0, 0.0}) return {};
  TrigPoly f;
  f.k_min_ = m;
  f.c_ = {c};
  return f;
}

TrigPoly TrigPoly::from_range(int k_min, std::vector<cd> coeffs) {
  std::size_t lo = 0;
  std::size_t hi = coeffs.size();
  while (lo < hi && coeffs[lo] == cd{0.0, 0.0}) ++lo;
  while (hi > lo && coeffs[hi - 1] == cd{0.0, 0.0}) --hi;
  TrigPoly f;
  if (lo == hi) return f;
  f.k_min_ = k_min + static_cast<int>(lo);
  f.c_.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(lo),
              coeffs.begin() + static_cast<std::ptrdiff_t>(hi));
  return f;
}

int TrigPoly::band() const {
  if (is_zero()) return 0;
  return std::max(std::abs(k_min()), std::abs(k_max()));
}

cd TrigPoly::coeff(int k) const {
  if (is_zero() || k < k_min_ || k > k_max()) return {0.0, 0.0};
  return c_[static_cast<std::size_t>(k - k_min_)];
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  const int lo = std::min(k_min(), o.k_min());
  const int hi = std::max(k_max(), o.k_max());
  std::vector<cd> out(static_cast<std::size_t>(hi - lo + 1), cd{0.0, 0.0});
  for (int k = k_min(); k <= k_max(); ++k) out[static_cast<std::size_t>(k - lo)] += coeff(k);
  for (int k = o.k_min(); k <= o.k_max(); ++k) out[static_cast<std::size_t>(k - lo)] += o.coeff(k);
  return from_range(lo, std::move(out));
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
  return *this + (o * cd{-1.0, 0.0});
}

TrigPoly TrigPoly::operator*(cd s) const {
  if (is_zero() || s == cd{0.0, 0.0}) return {};
  TrigPoly f;
  f.k_min_ = k_min_;
  f.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) f.c_[i] = c_[i] * s;
  return f;
}

TrigPoly TrigPoly::multiply(const TrigPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  const int lo = k_min() + o.k_min();
  std::vector<cd> out(c_.size() + o.c_.size() - 1, cd{0.0, 0.0});
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  return from_range(lo, std::move(out));
}

TrigPoly TrigPoly::shifted(int m) const {
  TrigPoly f = *this;
  if (!f.is_zero()) f.k_min_ += m;
  return f;
}

TrigPoly TrigPoly::conjugate_reflect() const {
  if (is_zero()) return {};
  std::vector<cd> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i)
    out[i] = std::conj(c_[c_.size() - 1 - i]);
  return from_range(-k_max(), std::move(out));
}

TrigPoly TrigPoly::truncated(int lo, int hi) const {
  if (is_zero() || lo > hi || hi < k_min() || lo > k_max()) return {};
  const int a = std::max(lo, k_min());
  const int b = std::min(hi, k_max());
  std::vector<cd> out(static_cast<std::size_t>(b - a + 1));
  for (int k = a; k <= b; ++k) out[static_cast<std::size_t>(k - a)] = coeff(k);
  return from_range(a, std::move(out));
}

double TrigPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const cd& z : c_) m = std::max(m, std::abs(z));
  return m;
}

TrigPoly compose_eN(const TrigPoly& f, int N) {
  if (N < 1) throw ArgumentError("compose_eN: N must be a positive integer");
  if (f.is_zero()) return {};
  const long long span =
      static_cast<long long>(f.k_max() - f.k_min()) * N + 1;
  if (span > kMaxDenseSpan)
    throw ArgumentError("compose_eN: dilated span exceeds dense storage cap");
  std::vector<cd> out(static_cast<std::size_t>(span), cd{0.0, 0.0});
  for (int k = f.k_min(); k <= f.k_max(); ++k)
    out[static_cast<std::size_t>(static_cast<long long>(k - f.k_min()) * N)] =
        f.coeff(k);
  return TrigPoly::from_range(f.k_min() * N, std::move(out));
}

}
