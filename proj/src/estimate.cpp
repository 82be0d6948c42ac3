#include "normlab/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "normlab/kernels.hpp"
#include "normlab/norms.hpp"
#include "normlab/parallel.hpp"
#include "normlab/rng.hpp"

namespace normlab {

namespace {

// Quadrature of |f|^(p-2) degrades outside this window.
constexpr double kMinP = 1.05;
constexpr double kMaxP = 50.0;

void check_lab_exponent(const PNorm& p) {
  if (p.p() < kMinP || p.p() > kMaxP)
    throw ArgumentError("norm lab accepts p in [1.05, 50]");
}

OperatorSpec op_at_degree(const OperatorSpec& A, int degree) {
  OperatorSpec op = [&] {
    switch (A.kind()) {
      case OperatorSpec::Kind::Identity:
        return OperatorSpec::identity(degree);
      case OperatorSpec::Kind::Riesz:
        return OperatorSpec::riesz_projection(degree);
      case OperatorSpec::Kind::Fejer:
        return OperatorSpec::fejer(A.fejer_n(), degree);
      case OperatorSpec::Kind::IdMinusFejer:
        return OperatorSpec::id_minus_fejer(A.fejer_n(), degree);
      case OperatorSpec::Kind::Toeplitz:
        return OperatorSpec::toeplitz(*A.symbol(), degree);
    }
    throw ArgumentError("op_at_degree: unknown kind");
  }();
  const int off = std::min(A.restrict_offset(), degree);
  return off > 0 ? op.restricted(off) : op;
}

// Ratio R(c) = ||A f||_p / ||f||_p over the free coefficient vector, with
// its exact gradient pulled back through the quadrature grids.
class RayleighEvaluator {
 public:
  RayleighEvaluator(const OperatorSpec& A, const PNorm& p)
      : A_(A),
        p_(p),
        lo_(A.domain_k_min()),
        hi_(A.domain_k_max()),
        gin_(policy_grid(std::max(std::abs(lo_), std::abs(hi_)), p)),
        gout_(policy_grid(A.output_k_max(), p)) {}

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  std::size_t dim() const { return static_cast<std::size_t>(hi_ - lo_ + 1); }
  const GridConfig& input_grid() const { return gin_; }

  TrigPoly to_poly(const std::vector<cd>& c) const {
    return TrigPoly::from_range(lo_, c);
  }

  std::vector<cd> from_poly(const TrigPoly& f) const {
    std::vector<cd> c(dim(), cd{0.0, 0.0});
    if (!f.is_zero())
      for (int k = std::max(lo_, f.k_min()); k <= std::min(hi_, f.k_max()); ++k)
        c[static_cast<std::size_t>(k - lo_)] = f.coeff(k);
    return c;
  }

  double value(const std::vector<cd>& c, double* nf_out = nullptr) const {
    const TrigPoly f = to_poly(c);
    if (f.is_zero()) {
      if (nf_out) *nf_out = 0.0;
      return 0.0;
    }
    const double nf = lp_norm(f, p_, gin_);
    if (nf_out) *nf_out = nf;
    const TrigPoly af = A_.apply(f);
    if (af.is_zero()) return 0.0;
    return lp_norm(af, p_, gout_) / nf;
  }

  struct Grad {
    double ratio = 0.0;
    double nf = 0.0;
    double na = 0.0;
    bool degenerate = false;      // f = 0 or A f = 0
    std::vector<cd> grad;         // gradient of the ratio
    std::vector<cd> grad_num;     // gradient of ||A f||_p alone
  };

  Grad gradient(const std::vector<cd>& c) const {
    Grad out;
    const TrigPoly f = to_poly(c);
    if (f.is_zero()) {
      out.degenerate = true;
      return out;
    }
    const std::vector<cd> fs = transform(f, gin_);
    out.nf = lp_norm_samples(fs, p_);
    const TrigPoly af = A_.apply(f);
    if (af.is_zero()) {
      out.degenerate = true;
      return out;
    }
    std::vector<cd> afs = transform(af, gout_);
    out.na = lp_norm_samples(afs, p_);
    out.ratio = out.na / out.nf;

    const auto& ops = kernels::active_ops();
    const double half = (p_.p() - 2.0) * 0.5;

    // d||Af||/dc = A^* of the aliased coefficients of na^(1-p)|Af|^(p-2) Af
    ops.abs_pow_scale_conj(afs.data(), afs.data(), afs.size(), half,
                           std::pow(out.na, 1.0 - p_.p()));
    for (auto& z : afs) z = std::conj(z);
    const TrigPoly ubar = inverse_transform(afs, 0, A_.output_k_max(), gout_);
    out.grad_num = from_poly(A_.adjoint_apply(ubar));

    std::vector<cd> w(fs.size());
    ops.abs_pow_scale_conj(w.data(), fs.data(), fs.size(), half,
                           std::pow(out.nf, 1.0 - p_.p()));
    for (auto& z : w) z = std::conj(z);
    const std::vector<cd> grad_den = from_poly(inverse_transform(w, lo_, hi_, gin_));

    out.grad.resize(dim());
    const double inv_nf2 = 1.0 / (out.nf * out.nf);
    for (std::size_t i = 0; i < dim(); ++i)
      out.grad[i] =
          (out.grad_num[i] * out.nf - grad_den[i] * out.na) * inv_nf2;
    return out;
  }

  // Duality-map fixed-point candidate f <- J_{p'}(A^* J_p(A f)): dualize the
  // numerator gradient as a function and project back onto the free indices.
  std::vector<cd> fixed_point(const Grad& g) const {
    const TrigPoly vpoly = to_poly(g.grad_num);
    if (vpoly.is_zero()) return g.grad_num;
    std::vector<cd> vs = transform(vpoly, gin_);
    kernels::active_ops().abs_pow_scale_conj(
        vs.data(), vs.data(), vs.size(), (p_.conjugate() - 2.0) * 0.5, 1.0);
    for (auto& z : vs) z = std::conj(z);
    return from_poly(inverse_transform(vs, lo_, hi_, gin_));
  }

 private:
  const OperatorSpec& A_;
  PNorm p_;
  int lo_;
  int hi_;
  GridConfig gin_;
  GridConfig gout_;
};

struct RunOutcome {
  double value = 0.0;
  std::vector<cd> c;
  int iterations = 0;
  bool converged = false;
};

RunOutcome run_ascent(const RayleighEvaluator& eval, std::vector<cd> c,
                      const EstimateOptions& opts) {
  RunOutcome out;
  double nf = 0.0;
  double r = eval.value(c, &nf);
  if (r <= 0.0 || nf <= 0.0) {
    out.c = std::move(c);
    out.converged = true;
    return out;
  }
  const double inv = 1.0 / nf;
  for (auto& z : c) z *= inv;

  double t = 1.0;
  int iter = 0;
  const auto& ops = kernels::active_ops();
  for (; iter < opts.max_iterations; ++iter) {
    const RayleighEvaluator::Grad g = eval.gradient(c);
    if (g.degenerate) break;
    r = g.ratio;
    const double gnorm2 =
        ops.dot_conj(g.grad.data(), g.grad.data(), g.grad.size()).real();

    bool moved = false;
    double rel = 0.0;
    if (gnorm2 > 1e-28 * std::max(1.0, r * r)) {
      double tt = t;
      for (int ls = 0; ls < 60; ++ls) {
        std::vector<cd> trial(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) trial[i] = c[i] + tt * g.grad[i];
        double nf_try = 0.0;
        const double r_try = eval.value(trial, &nf_try);
        if (r_try > r + 0.1 * tt * gnorm2 && nf_try > 0.0) {
          rel = (r_try - r) / r;
          const double s = 1.0 / nf_try;
          for (auto& z : trial) z *= s;
          c = std::move(trial);
          r = r_try;
          t = std::min(tt * 2.0, 1e6);
          moved = true;
          break;
        }
        tt *= 0.5;
      }
    }
    if (moved && rel >= opts.tol) continue;

    // Ascent stalled: duality-map fixed-point step.
    std::vector<cd> fp = eval.fixed_point(g);
    double nf_fp = 0.0;
    const double r_fp = eval.value(fp, &nf_fp);
    if (r_fp > r * (1.0 + opts.tol) && nf_fp > 0.0) {
      const double s = 1.0 / nf_fp;
      for (auto& z : fp) z *= s;
      c = std::move(fp);
      r = r_fp;
      continue;
    }
    out.converged = true;
    ++iter;
    break;
  }
  out.value = r;
  out.c = std::move(c);
  out.iterations = iter;
  return out;
}

NormEstimate estimate_at_degree(const OperatorSpec& A, const PNorm& p,
                                const EstimateOptions& opts,
                                const std::vector<TrigPoly>& extra_starts,
                                std::uint64_t stage) {
  const RayleighEvaluator eval(A, p);

  std::vector<std::vector<cd>> starts;
  starts.reserve(static_cast<std::size_t>(opts.restarts) + extra_starts.size());
  for (int i = 0; i < opts.restarts; ++i) {
    SeededGaussian rng(opts.seed, stage * 1000003ULL + static_cast<std::uint64_t>(i));
    std::vector<cd> c(eval.dim());
    for (auto& z : c) z = rng.gaussian();
    starts.push_back(std::move(c));
  }
  for (const TrigPoly& w : extra_starts) {
    if (w.is_zero() || w.k_min() < eval.lo() || w.k_max() > eval.hi()) continue;
    starts.push_back(eval.from_poly(w));
  }

  std::vector<RunOutcome> outcomes(starts.size());
  parallel_for_index(static_cast<int>(starts.size()), opts.threads, [&](int i) {
    outcomes[static_cast<std::size_t>(i)] =
        run_ascent(eval, starts[static_cast<std::size_t>(i)], opts);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i].value > outcomes[best].value) best = i;

  NormEstimate est;
  est.degree = A.degree();
  est.p = p.p();
  est.seed = opts.seed;
  est.restarts_used = static_cast<int>(starts.size());
  est.converged = outcomes[best].converged;
  est.iterations = outcomes[best].iterations;

  double nf = 0.0;
  est.value = eval.value(outcomes[best].c, &nf);
  std::vector<cd> c = std::move(outcomes[best].c);
  if (nf > 0.0)
    for (auto& z : c) z /= nf;
  est.maximizer = eval.to_poly(c);

  const UpperBound ub = upper_bound_for(A, p);
  est.upper_bound = ub.value;
  est.bound_source = ub.source;
  return est;
}

}  // namespace

bool consistency_ok(const NormEstimate& est) {
  return est.value <= est.upper_bound + 1e-6;
}

double riesz_thorin_bound(const BoundPair& b, double p) {
  if (!(b.n0 > 0.0) || !(b.n1 > 0.0))
    throw ArgumentError("riesz_thorin_bound: norms must be positive");
  const auto inv = [](double x) {
    return std::isinf(x) ? 0.0 : 1.0 / x;
  };
  if (!(b.p0 >= 1.0) || !(b.p1 >= 1.0) || b.p0 == b.p1)
    throw ArgumentError("riesz_thorin_bound: need distinct exponents in [1, inf]");
  const double i0 = inv(b.p0);
  const double i1 = inv(b.p1);
  const double ip = inv(p);
  const double t = (ip - i0) / (i1 - i0);
  if (t < -1e-12 || t > 1.0 + 1e-12)
    throw ArgumentError("riesz_thorin_bound: p outside the interpolation range");
  const double theta = std::clamp(t, 0.0, 1.0);
  return std::pow(b.n0, 1.0 - theta) * std::pow(b.n1, theta);
}

UpperBound upper_bound_for(const OperatorSpec& A, const PNorm& p) {
  const double two_power = std::pow(2.0, std::abs(1.0 - 2.0 / p.p()));
  const double riesz = 1.0 / std::sin(std::numbers::pi / p.p());
  switch (A.kind()) {
    case OperatorSpec::Kind::Identity:
      return {1.0, "sup-norm"};
    case OperatorSpec::Kind::Fejer:
      return {1.0, "sup-norm"};
    case OperatorSpec::Kind::IdMinusFejer:
      return {two_power, "riesz-thorin"};
    case OperatorSpec::Kind::Riesz:
      return {riesz, "riesz-const"};
    case OperatorSpec::Kind::Toeplitz:
      break;
  }
  const Symbol& a = *A.symbol();
  const double sup = a.sup_norm();
  // On the restricted subspace a Laurent symbol with k_min + offset >= 0
  // acts as plain multiplication, so the sup norm itself is an upper bound.
  if (a.kind() == Symbol::Kind::Laurent &&
      a.k_min() + A.restrict_offset() >= 0)
    return {sup, "sup-norm"};
  // T(e_{-1}) = e_{-1}(I - K_0), so the interpolation bound applies.
  if (a.kind() == Symbol::Kind::Laurent && a.k_min() == -1 && a.k_max() == -1 &&
      std::abs(std::abs(a.laurent_coeffs().coeff(-1)) - 1.0) < 1e-15) {
    if (two_power <= riesz) return {two_power, "riesz-thorin"};
    return {riesz, "riesz-const"};
  }
  return {riesz * sup, "riesz-const"};
}

NormEstimate estimate_norm(const OperatorSpec& A, const PNorm& p,
                           const EstimateOptions& opts) {
  check_lab_exponent(p);
  if (A.degree() < 1)
    throw ArgumentError("estimate_norm: degree must be at least 1");
  if (opts.restarts < 1)
    throw ArgumentError("estimate_norm: need at least one restart");

  std::vector<int> degrees{A.degree()};
  if (opts.ladder) {
    int dd = A.degree();
    const int floor_degree = std::max(8, A.restrict_offset() + 1);
    while (dd / 2 >= floor_degree) {
      dd /= 2;
      degrees.push_back(dd);
    }
    std::reverse(degrees.begin(), degrees.end());
  }

  NormEstimate est;
  std::vector<TrigPoly> carried = opts.warm_starts;
  for (std::size_t s = 0; s < degrees.size(); ++s) {
    const bool final_stage = s + 1 == degrees.size();
    const OperatorSpec op = op_at_degree(A, degrees[s]);
    EstimateOptions stage_opts = opts;
    if (!final_stage) stage_opts.restarts = std::max(2, opts.restarts / 4);
    est = estimate_at_degree(op, p, stage_opts, carried, s);
    carried = opts.warm_starts;
    carried.push_back(est.maximizer);
  }
  return est;
}

std::vector<cd> ratio_gradient(const OperatorSpec& A, const TrigPoly& f,
                               const PNorm& p) {
  check_lab_exponent(p);
  if (f.is_zero()) throw DegenerateInputError("ratio_gradient: f = 0");
  const RayleighEvaluator eval(A, p);
  A.apply(f);  // domain validation
  const RayleighEvaluator::Grad g = eval.gradient(eval.from_poly(f));
  if (g.degenerate)
    throw DegenerateInputError("ratio_gradient: A f = 0 (zero direction)");
  return g.grad;
}

double ratio_value(const OperatorSpec& A, const TrigPoly& f, const PNorm& p) {
  check_lab_exponent(p);
  if (f.is_zero()) throw DegenerateInputError("ratio_value: f = 0");
  const RayleighEvaluator eval(A, p);
  A.apply(f);  // domain validation
  return eval.value(eval.from_poly(f));
}

std::vector<NormEstimate> restricted_norm_sweep(const OperatorSpec& A,
                                                const PNorm& p, int degree,
                                                const std::vector<int>& ns,
                                                const EstimateOptions& opts) {
  const OperatorSpec base = op_at_degree(A, degree);
  std::vector<NormEstimate> out;
  out.reserve(ns.size());
  for (int n : ns) out.push_back(estimate_norm(base.restricted(n), p, opts));
  return out;
}

MonotonicityTable monotonicity_sweep(OperatorFamily family,
                                     const std::vector<int>& ns, const PNorm& p,
                                     int degree, const EstimateOptions& opts) {
  if (ns.empty()) throw ArgumentError("monotonicity_sweep: empty n list");
  const bool shifts = family == OperatorFamily::ToeplitzShifts;
  for (int n : ns)
    if (n < (shifts ? 1 : 0))
      throw ArgumentError("monotonicity_sweep: invalid n for the family");

  const OperatorSpec base_op =
      shifts ? OperatorSpec::toeplitz(Symbol::e(-1), degree)
             : OperatorSpec::id_minus_fejer(0, degree);
  const NormEstimate base = estimate_norm(base_op, p, opts);

  MonotonicityTable table;
  table.base_value = base.value;
  for (int n : ns) {
    MonotonicityRow row;
    row.n = n;
    const int dilation = shifts ? n : n + 1;
    row.degree = degree * dilation;
    if (dilation == 1) {
      row.value = base.value;
    } else {
      const OperatorSpec op =
          shifts ? OperatorSpec::toeplitz(Symbol::e(-n), row.degree)
                 : OperatorSpec::id_minus_fejer(n, row.degree);
      EstimateOptions sub = opts;
      sub.warm_starts.push_back(compose_eN(base.maximizer, dilation));
      row.value = estimate_norm(op, p, sub).value;
    }
    row.nondecreasing_ok = row.value >= table.base_value - 1e-4;
    table.rows.push_back(row);
  }
  return table;
}

}
