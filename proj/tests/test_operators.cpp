#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "normlab/norms.hpp"
#include "normlab/operators.hpp"
#include "normlab/rng.hpp"

using namespace normlab;

namespace {

TrigPoly random_poly(int k_min, int k_max, std::uint64_t seed) {
  SeededGaussian rng(seed);
  std::vector<cd> c(static_cast<std::size_t>(k_max - k_min + 1));
  for (auto& v : c) v = rng.gaussian();
  return TrigPoly::from_range(k_min, std::move(c));
}

// dense matrix of the operator on its free domain indices
std::vector<std::vector<cd>> dense_matrix(const OperatorSpec& A) {
  const int lo = A.domain_k_min();
  const int hi = A.domain_k_max();
  const int out = A.output_k_max();
  std::vector<std::vector<cd>> m(static_cast<std::size_t>(out + 1),
                                 std::vector<cd>(static_cast<std::size_t>(hi - lo + 1)));
  for (int k = lo; k <= hi; ++k) {
    const TrigPoly col = A.apply(TrigPoly::basis(k));
    for (int j = 0; j <= out; ++j)
      m[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - lo)] = col.coeff(j);
  }
  return m;
}

}  // namespace

TEST_CASE("riesz_project keeps k >= 0 and is idempotent") {
  const TrigPoly f =
      TrigPoly::basis(-2) + TrigPoly::basis(0) + TrigPoly::basis(3);
  const TrigPoly pf = riesz_project(f);
  CHECK(pf.coeff(-2) == cd{0, 0});
  CHECK(pf.coeff(0) == cd{1, 0});
  CHECK(pf.coeff(3) == cd{1, 0});
  CHECK(pf.k_min() == 0);

  const TrigPoly g = random_poly(0, 6, 1);
  CHECK((riesz_project(g) - g).is_zero());
  CHECK(riesz_project(TrigPoly::basis(-1)).is_zero());
  const TrigPoly h = random_poly(-5, 5, 2);
  CHECK((riesz_project(riesz_project(h)) - riesz_project(h)).is_zero());
}

TEST_CASE("toeplitz_apply with a = e_{-1} is the backward shift") {
  const TrigPoly f = TrigPoly::basis(0, cd{2, 1}) + TrigPoly::basis(1, cd{0, -3});
  const TrigPoly tf = toeplitz_apply(Symbol::e(-1), f);
  CHECK(tf.coeff(0) == cd{0, -3});
  CHECK(tf.k_max() == 0);

  const TrigPoly g = random_poly(0, 9, 3);
  CHECK(((toeplitz_apply(Symbol::e(0), g)) - g).is_zero());

  // |T(e_{-1}) f| = |f| pointwise when f-hat(0) = 0
  const TrigPoly h = random_poly(1, 8, 4);
  const TrigPoly th = toeplitz_apply(Symbol::e(-1), h);
  const GridConfig grid{64, 1.0};
  const auto hs = transform(h, grid);
  const auto ths = transform(th, grid);
  for (std::size_t j = 0; j < grid.size; ++j)
    CHECK(std::abs(std::abs(ths[j]) - std::abs(hs[j])) <= 1e-12);

  CHECK_THROWS_AS(toeplitz_apply(Symbol::e(-1), random_poly(-2, 3, 5)),
                  DomainError);
}

TEST_CASE("fejer_apply: mean, triangular multiplier, tail bound") {
  const TrigPoly f = random_poly(0, 6, 6);
  const TrigPoly k0 = fejer_apply(0, f);
  CHECK(k0.k_max() == 0);
  CHECK(k0.coeff(0) == f.coeff(0));

  const TrigPoly k1 = fejer_apply(1, TrigPoly::basis(1));
  CHECK(std::abs(k1.coeff(1) - cd{0.5, 0.0}) < 1e-15);

  // n >> band surrogate for K_n f -> f: the multiplier deficit is at most
  // band/(n+1), so ||K_n f - f||_2 <= band * ||f||_2 / (n+1)
  const int band = f.k_max();
  const int n = 10 * band;
  const double err = lp_norm(fejer_apply(n, f) - f, PNorm(2.0));
  CHECK(err <= band * lp_norm(f, PNorm(2.0)) / (n + 1.0) + 1e-12);
}

TEST_CASE("fejer_kernel: closed form, positivity, unit mass") {
  const GridConfig g{256, 1.0};
  const auto k0 = fejer_kernel(0, g);
  for (double v : k0)
    CHECK(v == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));

  const auto k1 = fejer_kernel(1, g);
  CHECK(k1[g.size / 2] ==  // theta = 0
        doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-13));

  for (int n : {2, 5, 17, 32}) {
    const auto kn = fejer_kernel(n, g);
    double mass = 0.0;
    for (double v : kn) {
      CHECK(v >= 0.0);
      mass += v;
    }
    mass *= 2.0 * std::numbers::pi / static_cast<double>(g.size);
    CHECK(std::abs(mass - 1.0) <= 1e-10);
  }
  CHECK_THROWS_AS(fejer_kernel(200, GridConfig{256, 1.0}), SizingError);
}

TEST_CASE("fejer multiplier agrees with grid convolution against the kernel") {
  for (int n : {1, 4, 16}) {
    const TrigPoly f = random_poly(0, 8, 40 + static_cast<std::uint64_t>(n));
    const GridConfig g{128, 1.0};
    const auto kern = fejer_kernel(n, g);
    const auto fs = transform(f, g);
    // (K_n * f)(theta_j) ~ (2 pi / size) sum_m K(theta_j - theta_m) f(theta_m)
    std::vector<cd> conv(g.size);
    for (std::size_t j = 0; j < g.size; ++j) {
      cd s{0, 0};
      for (std::size_t m = 0; m < g.size; ++m) {
        // kernel samples sit at theta_l = -pi + 2*pi*l/size, so the angle
        // theta_j - theta_m = 2*pi*(j-m)/size is sample l = j-m+size/2
        const std::size_t l = (j + g.size + g.size / 2 - m) % g.size;
        s += kern[l] * fs[m];
      }
      conv[j] = s * (2.0 * std::numbers::pi / static_cast<double>(g.size));
    }
    const auto direct = transform(fejer_apply(n, f), g);
    for (std::size_t j = 0; j < g.size; ++j)
      CHECK(std::abs(conv[j] - direct[j]) <= 1e-8);
  }
}

TEST_CASE("fejer means are L^p contractions") {
  for (double pv : {1.5, 2.0, 3.0}) {
    const PNorm p(pv);
    for (int n : {1, 7, 16}) {
      const TrigPoly f = random_poly(0, 10, 60 + static_cast<std::uint64_t>(n * pv));
      const GridConfig g = policy_grid(f.band(), p);
      CHECK(lp_norm(fejer_apply(n, f), p, g) <= lp_norm(f, p, g) + 1e-8);
    }
  }
}

TEST_CASE("symbols: e, gk, cph") {
  const Symbol em = Symbol::e(-1);
  CHECK(em.k_min() == -1);
  CHECK(em.k_max() == -1);
  CHECK(em.sup_norm() == 1.0);
  CHECK(em.sup_exact());

  const Symbol gk = Symbol::gk(4.0, +1);
  CHECK(gk.sup_norm() == 1.0);
  const GridConfig g{8, 1.0};
  const auto vals = gk.samples_on(g);
  // theta = pi/2 is grid point j = 6
  const cd want{std::sin(std::numbers::pi / 4), std::cos(std::numbers::pi / 4)};
  CHECK(std::abs(vals[6] - want) < 1e-15);
  for (const cd& v : vals) CHECK(std::abs(std::abs(v) - 1.0) < 1e-15);
  // one-sided convention at the jumps theta = -pi (j = 0) and theta = 0 (j = 4)
  CHECK(vals[0].imag() == doctest::Approx(want.imag()));
  CHECK(vals[4].imag() == doctest::Approx(want.imag()));
  CHECK(vals[1].imag() == doctest::Approx(-want.imag()));
  CHECK_THROWS_AS(Symbol::gk(1.0, +1), ArgumentError);
  CHECK_THROWS_AS(Symbol::gk(4.0, 2), ArgumentError);

  const Symbol a = Symbol::cph(2, TrigPoly::basis(0) + TrigPoly::basis(1));
  CHECK(a.k_min() == -2);
  CHECK(a.k_max() == -1);
  CHECK(std::abs(a.laurent_coeffs().coeff(-2) - cd{1, 0}) < 1e-15);
  CHECK_FALSE(a.sup_exact());
  CHECK_THROWS_AS(Symbol::cph(1, TrigPoly::basis(-1)), ArgumentError);
}

TEST_CASE("sup_norm dominates the observed grid maxima") {
  const Symbol a = Symbol::cph(1, random_poly(0, 6, 8));
  for (std::size_t size : {512u, 2048u, 8192u, 32768u}) {
    double m = 0.0;
    for (const cd& v : a.samples_on(GridConfig{size, 1.0}))
      m = std::max(m, std::abs(v));
    CHECK(a.sup_norm() >= m - 1e-12);
  }
}

TEST_CASE("adjoint_apply equals the conjugate transpose of the dense matrix") {
  std::vector<OperatorSpec> ops;
  ops.push_back(OperatorSpec::toeplitz(Symbol::e(-1), 8));
  ops.push_back(OperatorSpec::toeplitz(Symbol::e(-3), 10));
  ops.push_back(
      OperatorSpec::toeplitz(Symbol::laurent(random_poly(-2, 3, 70)), 8));
  ops.push_back(OperatorSpec::toeplitz(Symbol::gk(2.5, -1), 6));
  ops.push_back(OperatorSpec::fejer(3, 9));
  ops.push_back(OperatorSpec::id_minus_fejer(2, 9));
  ops.push_back(OperatorSpec::riesz_projection(6));
  ops.push_back(OperatorSpec::identity(7).restricted(3));
  ops.push_back(OperatorSpec::toeplitz(Symbol::e(-2), 12).restricted(2));

  for (const OperatorSpec& A : ops) {
    const auto m = dense_matrix(A);
    const int lo = A.domain_k_min();
    const int out = A.output_k_max();
    const TrigPoly g = random_poly(0, out, 81);
    const TrigPoly back = A.adjoint_apply(g);
    // back_k = sum_j conj(m[j][k]) g_j
    for (int k = lo; k <= A.domain_k_max(); ++k) {
      cd want{0, 0};
      for (int j = 0; j <= out; ++j)
        want += std::conj(m[static_cast<std::size_t>(j)]
                           [static_cast<std::size_t>(k - lo)]) *
                g.coeff(j);
      CHECK(std::abs(back.coeff(k) - want) <= 1e-12 * (1.0 + std::abs(want)));
    }
    // inner-product identity <A f, g> = <f, A* g>
    TrigPoly f = random_poly(std::max(0, lo), A.domain_k_max(), 83);
    if (A.two_sided_domain()) f = random_poly(lo, A.domain_k_max(), 83);
    const cd lhs = inner_l2(A.apply(f), g);
    const cd rhs = inner_l2(f, back);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("fejer operators are self-adjoint on their band") {
  const OperatorSpec A = OperatorSpec::fejer(4, 10);
  const TrigPoly g = random_poly(0, 10, 91);
  const TrigPoly once = A.adjoint_apply(g);
  const TrigPoly twice = A.apply(g);
  CHECK((once - twice).max_abs_coeff() <= 1e-14);
}

TEST_CASE("restrict: domain validation and the exact multiplication regime") {
  const OperatorSpec A = OperatorSpec::toeplitz(Symbol::e(-1), 6);
  CHECK_THROWS_AS(A.restricted(7), ArgumentError);
  CHECK(A.restricted(0).restrict_offset() == 0);

  // a = e_{-2} h on H_2: T(a) f = a f exactly, no truncation
  const TrigPoly h = TrigPoly::basis(0) + TrigPoly::basis(1, 0.5);
  const Symbol a = Symbol::cph(2, h);
  const OperatorSpec R = OperatorSpec::toeplitz(a, 10).restricted(2);
  const TrigPoly f = random_poly(2, 10, 17);
  const TrigPoly tf = R.apply(f);
  const TrigPoly af = a.laurent_coeffs().multiply(f);
  CHECK((tf - af).max_abs_coeff() <= 1e-14);
  CHECK_THROWS_AS(R.apply(random_poly(0, 5, 18)), DomainError);

  // n = d leaves the one-dimensional span of e_d
  const OperatorSpec one = OperatorSpec::identity(5).restricted(5);
  CHECK(one.domain_k_min() == 5);
  CHECK(one.domain_k_max() == 5);
}

TEST_CASE("toeplitz on the shifted domain equals pointwise multiplication on the grid") {
  const TrigPoly h = random_poly(0, 4, 19);
  const Symbol a = Symbol::cph(3, h);
  const OperatorSpec R = OperatorSpec::toeplitz(a, 12).restricted(3);
  const TrigPoly f = random_poly(3, 12, 20);
  const GridConfig g{64, 1.0};
  const auto tf = transform(R.apply(f), g);
  const auto as = a.samples_on(g);
  const auto fs = transform(f, g);
  for (std::size_t j = 0; j < g.size; ++j)
    CHECK(std::abs(tf[j] - as[j] * fs[j]) <= 1e-10);
}

TEST_CASE("operator domain and band validation errors") {
  const OperatorSpec A = OperatorSpec::toeplitz(Symbol::e(-1), 4);
  CHECK_THROWS_AS(A.apply(random_poly(0, 5, 21)), DomainError);
  CHECK_THROWS_AS(A.apply(random_poly(-1, 3, 22)), DomainError);
  CHECK_THROWS_AS(A.adjoint_apply(random_poly(0, 99, 23)), ShapeError);
  const OperatorSpec P = OperatorSpec::riesz_projection(4);
  CHECK_THROWS_AS(P.apply(random_poly(-6, 2, 24)), DomainError);
  CHECK_NOTHROW(P.apply(random_poly(-4, 4, 25)));
}
