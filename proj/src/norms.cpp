#include "normlab/norms.hpp"

#include <cmath>

#include "normlab/kernels.hpp"

namespace normlab {

double lp_norm_samples(const std::vector<cd>& samples, const PNorm& p) {
  if (samples.empty()) throw ArgumentError("lp_norm: empty sample set");
  const double mean =
      kernels::active_ops().sum_abs_pow(samples.data(), samples.size(),
                                        p.p() * 0.5) /
      static_cast<double>(samples.size());
  return std::pow(mean, 1.0 / p.p());
}

double lp_norm(const TrigPoly& f, const PNorm& p, const GridConfig& g) {
  if (f.is_zero()) return 0.0;
  const std::vector<cd> samples = transform(f, g);
  return lp_norm_samples(samples, p);
}

double lp_norm(const TrigPoly& f, const PNorm& p) {
  return lp_norm(f, p, policy_grid(f.band(), p));
}

cd pair(const std::vector<cd>& f, const std::vector<cd>& h) {
  if (f.size() != h.size()) throw ShapeError("pair: mismatched grid sizes");
  if (f.empty()) throw ArgumentError("pair: empty grids");
  return kernels::active_ops().dot_bilinear(f.data(), h.data(), f.size()) /
         static_cast<double>(f.size());
}

cd pair(const TrigPoly& f, const std::vector<cd>& h, const GridConfig& g) {
  if (h.size() != g.size) throw ShapeError("pair: mismatched grid sizes");
  return pair(transform(f, g), h);
}

std::vector<cd> duality_map(const TrigPoly& f, const PNorm& p,
                            const GridConfig& g) {
  if (f.is_zero()) throw DegenerateInputError("duality_map: zero polynomial");
  const std::vector<cd> samples = transform(f, g);
  const double nf = lp_norm_samples(samples, p);
  std::vector<cd> h(samples.size());
  kernels::active_ops().abs_pow_scale_conj(h.data(), samples.data(),
                                           samples.size(), (p.p() - 2.0) * 0.5,
                                           std::pow(nf, 1.0 - p.p()));
  return h;
}

double quadrature_tolerance(const PNorm& p) {
  // |f|^p is band-limited only for even integer p; otherwise zeros of f near
  // the circle limit the trapezoid rate, and policy grids hold the doubling
  // drift below 1e-3 relative in practice.
  return p.even_integer() ? 1e-12 : 1e-3;
}

}
