#include "normlab/symbol.hpp"

#include <cmath>
#include <numbers>

namespace normlab {

namespace {

// Upper bound for sup|a| from a dense grid: the grid max plus a curvature
// pad |a''|_sup * h^2 / 8 with |a''| <= sum k^2 |c_k|.
double padded_sup(const TrigPoly& a) {
  if (a.is_zero()) return 0.0;
  const std::size_t n = 1u << 14;
  const GridConfig g{n, 1.0};
  double m = 0.0;
  for (const cd& v : transform(a, g)) m = std::max(m, std::abs(v));
  double b2 = 0.0;
  for (int k = a.k_min(); k <= a.k_max(); ++k)
    b2 += static_cast<double>(k) * k * std::abs(a.coeff(k));
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  return m + b2 * h * h / 8.0;
}

}  // namespace

Symbol Symbol::e(int m) {
  Symbol s;
  s.kind_ = Kind::Laurent;
  s.a_ = TrigPoly::basis(m);
  s.sup_norm_ = 1.0;
  s.sup_exact_ = true;
  s.description_ = "e" + std::to_string(m);
  return s;
}

Symbol Symbol::gk(double p, int sign) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw ArgumentError("Symbol::gk: p must lie in (1, inf)");
  if (sign != 1 && sign != -1) throw ArgumentError("Symbol::gk: sign must be +-1");
  Symbol s;
  s.kind_ = Kind::Sampled;
  const double re = std::sin(std::numbers::pi / p);
  const double im = std::cos(std::numbers::pi / p) * sign;
  s.eval_ = [re, im](double theta) -> cd {
    // negative branch strictly inside (-pi, 0); both jump points get the
    // limit from theta > 0
    const bool lower = theta > -std::numbers::pi && theta < 0.0;
    return lower ? cd{re, -im} : cd{re, im};
  };
  s.sup_norm_ = 1.0;
  s.sup_exact_ = true;
  s.description_ = std::string("gk:") + (sign > 0 ? "+" : "-");
  return s;
}

Symbol Symbol::cph(int n, const TrigPoly& h) {
  if (n < 0) throw ArgumentError("Symbol::cph: n must be nonnegative");
  if (!h.is_analytic()) throw ArgumentError("Symbol::cph: h must be analytic");
  Symbol s;
  s.kind_ = Kind::Laurent;
  s.a_ = h.shifted(-n);
  s.sup_norm_ = padded_sup(h);  // |e_{-n}| = 1
  s.sup_exact_ = false;
  s.description_ = "cph:" + std::to_string(n);
  return s;
}

Symbol Symbol::laurent(TrigPoly a, double exact_sup) {
  Symbol s;
  s.kind_ = Kind::Laurent;
  s.sup_norm_ = exact_sup >= 0.0 ? exact_sup : padded_sup(a);
  s.sup_exact_ = exact_sup >= 0.0;
  s.a_ = std::move(a);
  s.description_ = "laurent";
  return s;
}

const TrigPoly& Symbol::laurent_coeffs() const {
  if (kind_ != Kind::Laurent)
    throw ArgumentError("Symbol: sampled symbol has no Laurent coefficients");
  return a_;
}

std::vector<cd> Symbol::samples_on(const GridConfig& g) const {
  if (kind_ == Kind::Laurent) return transform(a_, g);
  std::vector<cd> out(g.size);
  for (std::size_t j = 0; j < g.size; ++j) out[j] = eval_(grid_theta(g, j));
  return out;
}

int Symbol::k_min() const { return kind_ == Kind::Laurent ? a_.k_min() : 0; }
int Symbol::k_max() const { return kind_ == Kind::Laurent ? a_.k_max() : 0; }

}
