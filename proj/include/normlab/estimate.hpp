#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normlab/operators.hpp"
#include "normlab/pnorm.hpp"

namespace normlab {

/// Certified lower bound for an operator norm: the value is an attained
/// ratio ||A f||_p / ||f||_p, re-verifiable from (maximizer, A, p) by two
/// norm evaluations.
struct NormEstimate {
  double value = 0.0;
  TrigPoly maximizer;  // unit p-norm
  int restarts_used = 0;
  bool converged = false;
  int degree = 0;
  double p = 2.0;
  std::uint64_t seed = 0;
  int iterations = 0;
  double upper_bound = 0.0;      // registered upper bound for A at p
  std::string bound_source;      // riesz-thorin | sup-norm | riesz-const
};

/// value <= upper_bound + 1e-6 (the consistency gate).
bool consistency_ok(const NormEstimate& est);

struct EstimateOptions {
  int restarts = 16;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  int max_iterations = 10000;
  /// Coarse-to-fine warm start through degrees d/2^k; deterministic.
  bool ladder = false;
  /// Extra deterministic starting points (padded into the domain).
  std::vector<TrigPoly> warm_starts;
  /// 0 = one thread per restart up to hardware_concurrency.
  int threads = 0;
};

/// Known norms n0, n1 at exponents p0, p1 (either may be +infinity).
struct BoundPair {
  double p0;
  double n0;
  double p1;
  double n1;
};

/// Riesz-Thorin interpolation: n0^(1-t) * n1^t where 1/p = (1-t)/p0 + t/p1
/// (with 1/inf := 0). Throws when p is outside [min(p0,p1), max(p0,p1)].
double riesz_thorin_bound(const BoundPair& b, double p);

struct UpperBound {
  double value;
  std::string source;
};

/// Registered upper bound for the operator norm at p.
UpperBound upper_bound_for(const OperatorSpec& A, const PNorm& p);

/// Multi-start projected gradient ascent on the unit p-sphere with a
/// duality-map fixed-point fallback. Deterministic for fixed
/// (seed, restarts, degree, tol) regardless of thread count; ties between
/// restarts break toward the lowest restart index.
NormEstimate estimate_norm(const OperatorSpec& A, const PNorm& p,
                           const EstimateOptions& opts = {});

/// Gradient of R(f) = ||Af||_p / ||f||_p with respect to the free
/// coefficients of the domain (one complex entry per index, d/dRe + i*d/dIm).
std::vector<cd> ratio_gradient(const OperatorSpec& A, const TrigPoly& f,
                               const PNorm& p);

/// The attained ratio for a candidate maximizer (two norm evaluations on the
/// same policy grids the estimator uses).
double ratio_value(const OperatorSpec& A, const TrigPoly& f, const PNorm& p);

/// Estimates over restrict(A, n) for each n in ns.
std::vector<NormEstimate> restricted_norm_sweep(const OperatorSpec& A,
                                                const PNorm& p, int degree,
                                                const std::vector<int>& ns,
                                                const EstimateOptions& opts = {});

enum class OperatorFamily { ToeplitzShifts, FejerComplements };

struct MonotonicityRow {
  int n;
  int degree;     // matched budget so the dilation witness fits
  double value;
  bool nondecreasing_ok;  // value >= base - 1e-4
};

struct MonotonicityTable {
  double base_value = 0.0;  // estimate for n = 1 (shifts) or n = 0 (Fejer)
  std::vector<MonotonicityRow> rows;
};

/// Per-n estimates at matched degree budgets, warm-started with the dilated
/// base maximizer q o e_N, whose ratio reproduces the base value exactly.
MonotonicityTable monotonicity_sweep(OperatorFamily family,
                                     const std::vector<int>& ns, const PNorm& p,
                                     int degree, const EstimateOptions& opts = {});

}
