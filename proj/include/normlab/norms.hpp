#pragma once

#include <vector>

#include "normlab/grid.hpp"
#include "normlab/pnorm.hpp"
#include "normlab/trig_poly.hpp"

namespace normlab {

/// ||f||_p = ((1/2pi) int |f|^p dtheta)^(1/p) by the trapezoid rule on g,
/// which for a uniform periodic grid is the plain sample mean.
double lp_norm(const TrigPoly& f, const PNorm& p, const GridConfig& g);

/// Policy-sized convenience overload.
double lp_norm(const TrigPoly& f, const PNorm& p);

/// Same quadrature applied to raw samples.
double lp_norm_samples(const std::vector<cd>& samples, const PNorm& p);

/// Bilinear pairing (1/2pi) int f*h dtheta (no conjugation).
cd pair(const TrigPoly& f, const std::vector<cd>& h, const GridConfig& g);
cd pair(const std::vector<cd>& f, const std::vector<cd>& h);

/// Grid samples of h = ||f||^(1-p) |f|^(p-2) conj(f), with 0 at zeros of f.
/// Satisfies ||h||_{p'} = 1 and pair(f, h) = ||f||_p on the same grid.
std::vector<cd> duality_map(const TrigPoly& f, const PNorm& p,
                            const GridConfig& g);

/// Declared tolerance for the grid-doubling consistency check: quadrature is
/// exact for even integer p on policy grids and empirically controlled
/// otherwise.
double quadrature_tolerance(const PNorm& p);

}
