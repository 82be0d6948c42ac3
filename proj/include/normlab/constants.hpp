#pragma once

namespace normlab {

/// Reference constants at exponent p.
struct ConstantsRow {
  double p;
  double p_conjugate;
  double riesz;      // 1/sin(pi/p), the Riesz projection norm on L^p
  double two_power;  // 2^|1-2/p|
  double c_p;        // M(L^p), the one-dimensional maximum below
};

/// C_p = max over alpha in (0,1) of
///   (alpha^(p-1) + (1-alpha)^(p-1))^(1/p) *
///   (alpha^(1/(p-1)) + (1-alpha)^(1/(p-1)))^(1-1/p),
/// computed by a coarse grid plus golden-section refinement on (0, 1/2]
/// (the objective is symmetric under alpha <-> 1-alpha).
double cp(double p);

ConstantsRow reference_constants(double p);

}
