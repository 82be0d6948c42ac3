#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "normlab/symbol.hpp"
#include "normlab/trig_poly.hpp"

namespace normlab {

/// Keeps exactly the k >= 0 coefficients; idempotent.
TrigPoly riesz_project(const TrigPoly& f);

/// Fejer mean: coefficient multiplier max(0, 1 - |k|/(n+1)).
TrigPoly fejer_apply(int n, const TrigPoly& f);

/// Samples of the n-th Fejer kernel on g; real, nonnegative, unit mass
/// (2*pi/size)*sum = 1. Requires g.size > 2n.
std::vector<double> fejer_kernel(int n, const GridConfig& g);

/// T(a) f = P(a f) for analytic f; exact (convolutional) for Laurent
/// symbols, grid-multiplied and Nyquist-truncated for sampled ones.
TrigPoly toeplitz_apply(const Symbol& a, const TrigPoly& f);

/// L^2 coefficient inner product sum f-hat(k) * conj(g-hat(k)) (equals the
/// normalized L^2 pairing by Parseval).
cd inner_l2(const TrigPoly& f, const TrigPoly& g);

/// An operator acting on degree-d analytic polynomials
/// (two-sided band for the Riesz projection), with an optional restriction
/// to the subspace with the first n Fourier coefficients zero. Immutable and
/// safely shareable across threads.
class OperatorSpec {
 public:
  enum class Kind { Identity, Riesz, Fejer, IdMinusFejer, Toeplitz };

  static OperatorSpec identity(int degree);
  static OperatorSpec riesz_projection(int degree);
  static OperatorSpec fejer(int n, int degree);
  static OperatorSpec id_minus_fejer(int n, int degree);
  static OperatorSpec toeplitz(Symbol a, int degree);

  /// Domain becomes {f analytic, deg <= d, f-hat(0..n-1) = 0}.
  OperatorSpec restricted(int n) const;

  Kind kind() const { return kind_; }
  int degree() const { return degree_; }
  int restrict_offset() const { return offset_; }
  bool two_sided_domain() const { return kind_ == Kind::Riesz; }
  int domain_k_min() const { return two_sided_domain() ? -degree_ : offset_; }
  int domain_k_max() const { return degree_; }
  int output_k_max() const;
  int fejer_n() const { return n_; }
  const Symbol* symbol() const { return symbol_ ? &*symbol_ : nullptr; }

  TrigPoly apply(const TrigPoly& f) const;
  TrigPoly adjoint_apply(const TrigPoly& g) const;

  std::string description() const;

 private:
  OperatorSpec(Kind k, int degree);

  void validate_domain(const TrigPoly& f) const;

  Kind kind_;
  int degree_;
  int offset_ = 0;
  int n_ = 0;
  std::optional<Symbol> symbol_;
  // sampled-symbol working grid and cached samples
  GridConfig mult_grid_{};
  std::shared_ptr<const std::vector<cd>> sym_samples_;
};

}
