#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "normlab/norms.hpp"
#include "normlab/rng.hpp"

using namespace normlab;

namespace {

TrigPoly random_poly(int k_min, int k_max, std::uint64_t seed) {
  SeededGaussian rng(seed);
  std::vector<cd> c(static_cast<std::size_t>(k_max - k_min + 1));
  for (auto& v : c) v = rng.gaussian();
  return TrigPoly::from_range(k_min, std::move(c));
}

// direct evaluation oracle, no FFT
cd eval_direct(const TrigPoly& f, double theta) {
  cd s{0.0, 0.0};
  for (int k = f.k_min(); k <= f.k_max(); ++k)
    s += f.coeff(k) * std::polar(1.0, k * theta);
  return s;
}

}  // namespace

TEST_CASE("TrigPoly storage is minimal and arithmetic trims") {
  TrigPoly z;
  CHECK(z.is_zero());
  CHECK(z.is_analytic());
  CHECK(z.band() == 0);

  TrigPoly f = TrigPoly::from_range(-2, {cd{0, 0}, cd{1, 0}, cd{0, 0}, cd{2, 0}, cd{0, 0}});
  CHECK(f.k_min() == -1);
  CHECK(f.k_max() == 1);
  CHECK(f.coeff(-1) == cd{1, 0});
  CHECK(f.coeff(0) == cd{0, 0});
  CHECK(f.coeff(1) == cd{2, 0});
  CHECK_FALSE(f.is_analytic());

  const TrigPoly g = f - f;
  CHECK(g.is_zero());

  const TrigPoly h = TrigPoly::basis(3, 2.0).multiply(TrigPoly::basis(-1, 0.5));
  CHECK(h.k_min() == 2);
  CHECK(h.k_max() == 2);
  CHECK(h.coeff(2) == cd{1.0, 0.0});
}

TEST_CASE("transform: constants and monomials") {
  const GridConfig g8{8, 1.0};
  const auto ones = transform(TrigPoly::basis(0), g8);
  for (const cd& v : ones) CHECK(std::abs(v - cd{1, 0}) < 1e-14);

  // e_1 on a 4-point grid: values at theta_j = -pi + pi*j/2
  const GridConfig g4{4, 1.0};
  const auto s = transform(TrigPoly::basis(1), g4);
  const cd want[4] = {{-1, 0}, {0, -1}, {1, 0}, {0, 1}};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(s[j] - want[j]) < 1e-14);
}

TEST_CASE("transform round-trip: random degree-16 polynomial on a size-64 grid") {
  const TrigPoly f = random_poly(0, 16, 21);
  const GridConfig g{64, 1.0};
  const auto samples = transform(f, g);
  // forward agrees with the direct summation oracle
  for (std::size_t j = 0; j < g.size; j += 7)
    CHECK(std::abs(samples[j] - eval_direct(f, grid_theta(g, j))) < 1e-12);
  const TrigPoly back = inverse_transform(samples, 0, 16, g);
  for (int k = 0; k <= 16; ++k)
    CHECK(std::abs(back.coeff(k) - f.coeff(k)) <= 1e-12);
}

TEST_CASE("transform sizing errors") {
  const TrigPoly f = random_poly(-4, 4, 1);
  CHECK_THROWS_AS(transform(f, GridConfig{7, 1.0}), SizingError);
  CHECK_NOTHROW(transform(f, GridConfig{9, 1.0}));
  const auto s = transform(f, GridConfig{16, 1.0});
  CHECK_THROWS_AS(inverse_transform(s, -8, 8, GridConfig{16, 1.0}), SizingError);
  CHECK_THROWS_AS(inverse_transform(s, 0, 4, GridConfig{32, 1.0}), ShapeError);
}

TEST_CASE("PNorm rejects unsupported exponents") {
  CHECK_THROWS_AS(PNorm(1.0), UnsupportedExponentError);
  CHECK_THROWS_AS(PNorm(0.8), UnsupportedExponentError);
  CHECK_THROWS_AS(PNorm(std::numeric_limits<double>::infinity()),
                  UnsupportedExponentError);
  const PNorm p(1.25);
  CHECK(1.0 / p.p() + 1.0 / p.conjugate() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("lp_norm: unimodular monomials, Parseval, quartic closed form") {
  for (double pv : {1.3, 2.0, 4.0})
    for (int k : {-3, 0, 5})
      CHECK(lp_norm(TrigPoly::basis(k), PNorm(pv)) ==
            doctest::Approx(1.0).epsilon(1e-12));

  const TrigPoly f = TrigPoly::basis(0, 3.0) + TrigPoly::basis(1, 4.0);
  CHECK(lp_norm(f, PNorm(2.0)) == doctest::Approx(5.0).epsilon(1e-12));

  // |1 + e^{i theta}|^4 = (2 + 2cos)^2 has mean 6
  const TrigPoly g = TrigPoly::basis(0) + TrigPoly::basis(1);
  CHECK(lp_norm(g, PNorm(4.0)) ==
        doctest::Approx(std::pow(6.0, 0.25)).epsilon(1e-13));
}

TEST_CASE("Parseval invariant on policy grids") {
  for (std::uint64_t seed : {2u, 3u, 4u, 5u}) {
    const TrigPoly f = random_poly(-9, 16, seed);
    double parseval = 0.0;
    for (int k = f.k_min(); k <= f.k_max(); ++k) parseval += std::norm(f.coeff(k));
    parseval = std::sqrt(parseval);
    CHECK(std::abs(lp_norm(f, PNorm(2.0)) - parseval) <= 1e-10);
  }
}

TEST_CASE("pair: orthogonality, duality equality, Hoelder") {
  const PNorm p2(2.0);
  const GridConfig g = policy_grid(2, p2);
  const std::vector<cd> ones(g.size, cd{1.0, 0.0});
  CHECK(std::abs(pair(TrigPoly::basis(1), ones, g)) < 1e-14);

  std::vector<cd> em1(g.size);
  for (std::size_t j = 0; j < g.size; ++j)
    em1[j] = std::polar(1.0, -grid_theta(g, j));
  CHECK(std::abs(pair(TrigPoly::basis(1), em1, g) - cd{1, 0}) < 1e-13);

  CHECK_THROWS_AS(pair(TrigPoly::basis(0), ones, GridConfig{g.size * 2, 1.0}),
                  ShapeError);

  for (double pv : {1.4, 2.0, 3.1}) {
    const PNorm p(pv);
    const TrigPoly f = random_poly(0, 7, 31 + static_cast<std::uint64_t>(10 * pv));
    const GridConfig gp = policy_grid(f.band(), p);
    const auto h = duality_map(f, p, gp);
    // pairing attains the norm
    CHECK(std::abs(pair(f, h, gp) - cd{lp_norm(f, p, gp), 0.0}) <= 1e-10);
    // Hoelder on an unrelated pair
    const TrigPoly u = random_poly(0, 7, 77 + static_cast<std::uint64_t>(10 * pv));
    CHECK(std::abs(pair(u, h, gp)) <=
          lp_norm(u, p, gp) * lp_norm_samples(h, p.dual()) + 1e-10);
  }
}

TEST_CASE("duality_map: constants, p=2 case, dual norm on a refined grid") {
  const PNorm p4(4.0);
  const GridConfig g = policy_grid(1, p4);
  for (double pv : {1.5, 2.0, 4.0}) {
    const auto hub = duality_map(TrigPoly::basis(0), PNorm(pv), g);
    for (const cd& v : hub) CHECK(std::abs(v - cd{1.0, 0.0}) < 1e-13);
  }
  // unimodular-after-normalization constant: h = conj(f)/|f| here
  const auto h0 = duality_map(TrigPoly::basis(0, cd{0.0, 2.0}), p4, g);
  for (const cd& v : h0) CHECK(std::abs(v - cd{0.0, -1.0}) < 1e-13);

  const TrigPoly f = random_poly(0, 5, 9);
  const GridConfig g2 = policy_grid(5, PNorm(2.0));
  const auto h2 = duality_map(f, PNorm(2.0), g2);
  const auto fs = transform(f, g2);
  const double nf = lp_norm_samples(fs, PNorm(2.0));
  for (std::size_t j = 0; j < g2.size; ++j)
    CHECK(std::abs(h2[j] - std::conj(fs[j]) / nf) <= 1e-12);

  // refined-grid oracle: rebuild h pointwise on a 4x finer grid and check
  // its dual norm stays 1
  const TrigPoly q = TrigPoly::basis(0) + TrigPoly::basis(1);
  const GridConfig gq = policy_grid(1, p4);
  const double nq = lp_norm(q, p4, gq);
  const GridConfig fine{4 * gq.size, 4.0 * gq.oversample};
  const auto qs = transform(q, fine);
  std::vector<cd> href(fine.size);
  for (std::size_t j = 0; j < fine.size; ++j) {
    const double a = std::abs(qs[j]);
    href[j] = a == 0.0 ? cd{0, 0}
                       : std::pow(nq, 1.0 - 4.0) * std::pow(a, 2.0) * std::conj(qs[j]);
  }
  CHECK(lp_norm_samples(href, p4.dual()) == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(duality_map(TrigPoly{}, p4, g), DegenerateInputError);
}

TEST_CASE("compose_eN: index dilation and argument guard") {
  CHECK_THROWS_AS(compose_eN(TrigPoly::basis(1), 0), ArgumentError);
  const TrigPoly a = compose_eN(TrigPoly::basis(1), 3);
  CHECK(a.k_min() == 3);
  CHECK(a.k_max() == 3);
  const TrigPoly b =
      compose_eN(TrigPoly::basis(0) + TrigPoly::basis(2, 2.0), 5);
  CHECK(b.coeff(0) == cd{1, 0});
  CHECK(b.coeff(10) == cd{2, 0});
  CHECK(b.coeff(5) == cd{0, 0});
}

TEST_CASE("dilation isometry on matched grids") {
  // ||f o e_N||_p = ||f||_p sample-for-sample when the dilated grid is N
  // times an even grid
  for (double pv : {1.3, 2.0, 4.0}) {
    const PNorm p(pv);
    for (int N : {2, 3, 7}) {
      const TrigPoly f = random_poly(0, 16, 400 + static_cast<std::uint64_t>(N * pv));
      const GridConfig base = policy_grid(f.band(), p);
      const GridConfig big{base.size * static_cast<std::size_t>(N), base.oversample};
      const double n1 = lp_norm(f, p, base);
      const double n2 = lp_norm(compose_eN(f, N), p, big);
      CHECK(std::abs(n1 - n2) <= 1e-10);
    }
  }
  // the composition isometry at a non-even exponent
  const TrigPoly f = random_poly(0, 8, 99);
  const PNorm p(2.7);
  const GridConfig base = policy_grid(8, p);
  const GridConfig big{base.size * 7, base.oversample};
  CHECK(std::abs(lp_norm(f, p, base) - lp_norm(compose_eN(f, 7), p, big)) <= 1e-10);
}

TEST_CASE("quadrature consistency: grid doubling is within the declared tolerance") {
  for (double pv : {1.3, 2.7, 4.0}) {
    const PNorm p(pv);
    for (std::uint64_t seed : {12u, 13u, 14u}) {
      const TrigPoly f = random_poly(0, 16, seed);
      const GridConfig g = policy_grid(f.band(), p);
      const GridConfig g2{2 * g.size, 2 * g.oversample};
      const double n1 = lp_norm(f, p, g);
      const double n2 = lp_norm(f, p, g2);
      CHECK(std::abs(n1 - n2) <= quadrature_tolerance(p) * std::max(1.0, n1));
    }
  }
}

TEST_CASE("policy grids meet the oversampling bound") {
  for (double pv : {1.2, 2.0, 3.5, 7.0}) {
    const PNorm p(pv);
    for (int band : {1, 5, 16, 64}) {
      const GridConfig g = policy_grid(band, p);
      const double factor = std::max(2.0, std::ceil(pv));
      CHECK(g.size >= 4 * static_cast<std::size_t>(band + 1) * factor);
      CHECK(g.size % 2 == 0);
      const GridConfig gm = policy_grid_multiple(band, p, 10);
      CHECK(gm.size % 10 == 0);
      CHECK((gm.size / 10) % 2 == 0);
      CHECK(gm.size >= 4 * static_cast<std::size_t>(band + 1) * factor);
    }
  }
}
