#include "normlab/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "normlab/fft.hpp"

namespace normlab {

namespace {

std::size_t policy_lower_bound(int band, const PNorm& p) {
  const auto factor =
      static_cast<std::size_t>(std::max(2.0, std::ceil(p.p())));
  const auto b = static_cast<std::size_t>(band);
  return std::max<std::size_t>(4 * (b + 1) * factor, 2 * b + 2);
}

int mod_index(int k, std::size_t n) {
  const int m = static_cast<int>(n);
  int r = k % m;
  if (r < 0) r += m;
  return r;
}

// e^{ik*theta_0} with theta_0 = -pi: exactly (-1)^k.
double twist(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double grid_theta(const GridConfig& g, std::size_t j) {
  return -std::numbers::pi +
         2.0 * std::numbers::pi * static_cast<double>(j) /
             static_cast<double>(g.size);
}

GridConfig policy_grid(int band, const PNorm& p) {
  const std::size_t size = std::bit_ceil(policy_lower_bound(band, p));
  return {size, static_cast<double>(size) / (2.0 * band + 1.0)};
}

GridConfig policy_grid_multiple(int band, const PNorm& p, std::size_t multiple) {
  const std::size_t lower = policy_lower_bound(band, p);
  std::size_t k = (lower + multiple - 1) / multiple;
  if (k % 2 != 0) ++k;  // even factor keeps dilated sample sets aligned
  const std::size_t size = multiple * k;
  return {size, static_cast<double>(size) / (2.0 * band + 1.0)};
}

std::vector<cd> transform(const TrigPoly& f, const GridConfig& g) {
  if (g.size == 0) throw ArgumentError("transform: empty grid");
  std::vector<cd> buf(g.size, cd{0.0, 0.0});
  if (f.is_zero()) return buf;
  if (2 * static_cast<std::size_t>(f.band()) + 1 > g.size)
    throw SizingError("transform: grid too small for the polynomial band");
  for (int k = f.k_min(); k <= f.k_max(); ++k)
    buf[static_cast<std::size_t>(mod_index(k, g.size))] += f.coeff(k) * twist(k);
  fft::inverse(buf);
  return buf;
}

TrigPoly inverse_transform(const std::vector<cd>& samples, int k_min, int k_max,
                           const GridConfig& g) {
  if (samples.size() != g.size)
    throw ShapeError("inverse_transform: sample count does not match grid");
  if (k_min > k_max)
    throw ArgumentError("inverse_transform: empty band");
  const int band = std::max(std::abs(k_min), std::abs(k_max));
  if (2 * static_cast<std::size_t>(band) + 1 > g.size)
    throw SizingError("inverse_transform: band outside the grid's Nyquist range");
  std::vector<cd> buf = samples;
  fft::forward(buf);
  const double inv_n = 1.0 / static_cast<double>(g.size);
  std::vector<cd> coeffs(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k)
    coeffs[static_cast<std::size_t>(k - k_min)] =
        buf[static_cast<std::size_t>(mod_index(k, g.size))] * (twist(k) * inv_n);
  return TrigPoly::from_range(k_min, std::move(coeffs));
}

}
