#pragma once

#include <cstddef>
#include <vector>

#include "normlab/pnorm.hpp"
#include "normlab/trig_poly.hpp"

namespace normlab {

/// Uniform sampling grid theta_j = -pi + 2*pi*j/size, j = 0..size-1.
struct GridConfig {
  std::size_t size = 0;
  /// ratio of size to the Nyquist-minimal grid (2*band+1) it was sized for
  double oversample = 1.0;
};

/// Grid angle theta_j.
double grid_theta(const GridConfig& g, std::size_t j);

/// Oversampling policy: size >= 4*(band+1)*max(2, ceil(p)), rounded up to a
/// power of two. |f|^p is not band-limited for non-even p, hence the factor.
GridConfig policy_grid(int band, const PNorm& p);

/// Same bound but the size is `multiple` times an even integer (used where
/// frequency-domain statements need the grid divisible by N).
GridConfig policy_grid_multiple(int band, const PNorm& p, std::size_t multiple);

/// Evaluate f at the grid points. Throws SizingError unless
/// size >= 2*band(f)+1 (alias-free representation of f itself).
std::vector<cd> transform(const TrigPoly& f, const GridConfig& g);

/// Recover coefficients on [k_min, k_max] from samples; for band-limited
/// input within Nyquist this inverts `transform` exactly up to round-off,
/// otherwise it returns the aliased coefficients.
TrigPoly inverse_transform(const std::vector<cd>& samples, int k_min, int k_max,
                           const GridConfig& g);

}
