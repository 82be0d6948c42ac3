#include "normlab/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "normlab/kernels.hpp"

namespace normlab {

namespace {

// Working-grid policy for sampled symbols: the pointwise product is formed
// on a grid of at least kSampledGridFactor*(d+1) points and the output is
// truncated to the band kSampledOutputFactor*(d+1) (a finite section whose
// convergence is checked by grid doubling in the tests).
constexpr unsigned kSampledGridFactor = 32;
constexpr int kSampledOutputFactor = 16;

}  // namespace

TrigPoly riesz_project(const TrigPoly& f) {
  if (f.is_zero() || f.k_min() >= 0) return f;
  return f.truncated(0, f.k_max());
}

TrigPoly fejer_apply(int n, const TrigPoly& f) {
  if (n < 0) throw ArgumentError("fejer_apply: n must be nonnegative");
  if (f.is_zero()) return f;
  const int lo = std::max(f.k_min(), -n);
  const int hi = std::min(f.k_max(), n);
  if (lo > hi) return {};
  std::vector<cd> out(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k)
    out[static_cast<std::size_t>(k - lo)] =
        f.coeff(k) * (1.0 - std::abs(k) / (n + 1.0));
  return TrigPoly::from_range(lo, std::move(out));
}

std::vector<double> fejer_kernel(int n, const GridConfig& g) {
  if (n < 0) throw ArgumentError("fejer_kernel: n must be nonnegative");
  if (g.size <= 2 * static_cast<std::size_t>(n))
    throw SizingError("fejer_kernel: grid must have more than 2n points");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> out(g.size);
  for (std::size_t j = 0; j < g.size; ++j) {
    const double theta = grid_theta(g, j);
    const double s = std::sin(0.5 * theta);
    if (s == 0.0) {
      out[j] = (n + 1.0) / two_pi;
    } else {
      const double t = std::sin(0.5 * (n + 1.0) * theta) / s;
      out[j] = t * t / (two_pi * (n + 1.0));
    }
  }
  return out;
}

TrigPoly toeplitz_apply(const Symbol& a, const TrigPoly& f) {
  if (!f.is_analytic()) throw DomainError("toeplitz_apply: f must be analytic");
  if (f.is_zero()) return {};
  if (a.kind() == Symbol::Kind::Laurent)
    return riesz_project(a.laurent_coeffs().multiply(f));
  const int d = f.k_max();
  const std::size_t size =
      std::bit_ceil(kSampledGridFactor * static_cast<unsigned>(d + 1));
  const GridConfig g{size, static_cast<double>(size) / (2.0 * d + 1.0)};
  const int out_max = std::min<int>(static_cast<int>(size) / 2 - 1,
                                    kSampledOutputFactor * (d + 1));
  std::vector<cd> fs = transform(f, g);
  const std::vector<cd> as = a.samples_on(g);
  kernels::active_ops().pointwise_mul(fs.data(), fs.data(), as.data(), g.size);
  return inverse_transform(fs, 0, out_max, g);
}

cd inner_l2(const TrigPoly& f, const TrigPoly& g) {
  if (f.is_zero() || g.is_zero()) return {0.0, 0.0};
  cd s{0.0, 0.0};
  const int lo = std::max(f.k_min(), g.k_min());
  const int hi = std::min(f.k_max(), g.k_max());
  for (int k = lo; k <= hi; ++k) s += f.coeff(k) * std::conj(g.coeff(k));
  return s;
}

OperatorSpec::OperatorSpec(Kind k, int degree) : kind_(k), degree_(degree) {
  if (degree < 0) throw ArgumentError("OperatorSpec: degree must be nonnegative");
}

OperatorSpec OperatorSpec::identity(int degree) { return {Kind::Identity, degree}; }

OperatorSpec OperatorSpec::riesz_projection(int degree) {
  return {Kind::Riesz, degree};
}

OperatorSpec OperatorSpec::fejer(int n, int degree) {
  if (n < 0) throw ArgumentError("OperatorSpec::fejer: n must be nonnegative");
  OperatorSpec op{Kind::Fejer, degree};
  op.n_ = n;
  return op;
}

OperatorSpec OperatorSpec::id_minus_fejer(int n, int degree) {
  if (n < 0)
    throw ArgumentError("OperatorSpec::id_minus_fejer: n must be nonnegative");
  OperatorSpec op{Kind::IdMinusFejer, degree};
  op.n_ = n;
  return op;
}

OperatorSpec OperatorSpec::toeplitz(Symbol a, int degree) {
  OperatorSpec op{Kind::Toeplitz, degree};
  op.symbol_ = std::move(a);
  if (op.symbol_->kind() == Symbol::Kind::Sampled) {
    const std::size_t size =
        std::bit_ceil(kSampledGridFactor * static_cast<unsigned>(degree + 1));
    op.mult_grid_ = {size, static_cast<double>(size) / (2.0 * degree + 1.0)};
    op.sym_samples_ = std::make_shared<const std::vector<cd>>(
        op.symbol_->samples_on(op.mult_grid_));
  }
  return op;
}

OperatorSpec OperatorSpec::restricted(int n) const {
  if (n < 0 || n > degree_)
    throw ArgumentError("OperatorSpec::restricted: need 0 <= n <= degree");
  if (two_sided_domain())
    throw ArgumentError("OperatorSpec::restricted: two-sided domain");
  OperatorSpec op = *this;
  op.offset_ = n;
  return op;
}

int OperatorSpec::output_k_max() const {
  switch (kind_) {
    case Kind::Identity:
    case Kind::Riesz:
    case Kind::Fejer:
    case Kind::IdMinusFejer:
      return degree_;
    case Kind::Toeplitz:
      if (symbol_->kind() == Symbol::Kind::Laurent)
        return degree_ + std::max(0, symbol_->k_max());
      return std::min<int>(static_cast<int>(mult_grid_.size) / 2 - 1,
                           kSampledOutputFactor * (degree_ + 1));
  }
  return degree_;
}

void OperatorSpec::validate_domain(const TrigPoly& f) const {
  if (f.is_zero()) return;
  if (two_sided_domain()) {
    if (f.band() > degree_)
      throw DomainError("OperatorSpec: input band exceeds the domain degree");
    return;
  }
  if (!f.is_analytic())
    throw DomainError("OperatorSpec: input must be analytic");
  if (f.k_max() > degree_)
    throw DomainError("OperatorSpec: input degree exceeds the domain degree");
  if (f.k_min() < offset_)
    throw DomainError(
        "OperatorSpec: restricted domain requires the first coefficients to vanish");
}

TrigPoly OperatorSpec::apply(const TrigPoly& f) const {
  validate_domain(f);
  if (f.is_zero()) return {};
  switch (kind_) {
    case Kind::Identity:
      return f;
    case Kind::Riesz:
      return riesz_project(f);
    case Kind::Fejer:
      return fejer_apply(n_, f);
    case Kind::IdMinusFejer:
      return f - fejer_apply(n_, f);
    case Kind::Toeplitz:
      break;
  }
  const Symbol& a = *symbol_;
  if (a.kind() == Symbol::Kind::Laurent)
    return riesz_project(a.laurent_coeffs().multiply(f));
  std::vector<cd> fs = transform(f, mult_grid_);
  kernels::active_ops().pointwise_mul(fs.data(), fs.data(),
                                      sym_samples_->data(), mult_grid_.size);
  return inverse_transform(fs, 0, output_k_max(), mult_grid_);
}

TrigPoly OperatorSpec::adjoint_apply(const TrigPoly& g) const {
  if (!g.is_zero() && (!g.is_analytic() || g.k_max() > output_k_max()))
    throw ShapeError("adjoint_apply: input outside the operator's output band");
  if (g.is_zero()) return {};
  switch (kind_) {
    case Kind::Identity:
      return g.truncated(offset_, degree_);
    case Kind::Riesz:
      return g;  // embeds [0, d] into the two-sided domain
    case Kind::Fejer:
      return fejer_apply(n_, g).truncated(offset_, degree_);
    case Kind::IdMinusFejer:
      return (g - fejer_apply(n_, g)).truncated(offset_, degree_);
    case Kind::Toeplitz:
      break;
  }
  const Symbol& a = *symbol_;
  if (a.kind() == Symbol::Kind::Laurent) {
    // correlation with the conjugated symbol: (A* g)_k = sum_j conj(a_{j-k}) g_j
    std::vector<cd> out(static_cast<std::size_t>(degree_ - offset_ + 1),
                        cd{0.0, 0.0});
    const TrigPoly& ac = a.laurent_coeffs();
    for (int k = offset_; k <= degree_; ++k) {
      cd s{0.0, 0.0};
      const int jlo = std::max(g.k_min(), k + ac.k_min());
      const int jhi = std::min(g.k_max(), k + ac.k_max());
      for (int j = jlo; j <= jhi; ++j)
        s += std::conj(ac.coeff(j - k)) * g.coeff(j);
      out[static_cast<std::size_t>(k - offset_)] = s;
    }
    return TrigPoly::from_range(offset_, std::move(out));
  }
  std::vector<cd> gs = transform(g, mult_grid_);
  kernels::active_ops().pointwise_mul_conj(gs.data(), sym_samples_->data(),
                                           gs.data(), mult_grid_.size);
  return inverse_transform(gs, offset_, degree_, mult_grid_);
}

std::string OperatorSpec::description() const {
  std::string base;
  switch (kind_) {
    case Kind::Identity: base = "identity"; break;
    case Kind::Riesz: base = "riesz"; break;
    case Kind::Fejer: base = "fejer:" + std::to_string(n_); break;
    case Kind::IdMinusFejer:
      base = "id-minus-fejer:" + std::to_string(n_);
      break;
    case Kind::Toeplitz: base = "toeplitz:" + symbol_->description(); break;
  }
  if (offset_ > 0) base += "#H" + std::to_string(offset_);
  return base;
}

}
