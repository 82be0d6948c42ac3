#include "normlab/witness.hpp"

#include <algorithm>
#include <cmath>

#include "normlab/fft.hpp"
#include "normlab/norms.hpp"

namespace normlab {

namespace {

// Certificate grid: a multiple of N at least as fine as the policy bound
// 8*(band+1)*max(2, ceil(p)), with an even factor so dilated sample sets
// coincide with those of the undilated polynomial.
GridConfig certificate_grid(int band, const PNorm& p, int N) {
  const GridConfig base = policy_grid_multiple(
      2 * band + 1, p, static_cast<std::size_t>(N));
  return base;
}

int candidate_degree_max(const std::vector<TrigPoly>& candidates) {
  int m = 0;
  for (const TrigPoly& c : candidates) {
    if (!c.is_analytic())
      throw ArgumentError("witness: candidates must be analytic polynomials");
    if (!c.is_zero()) m = std::max(m, c.k_max());
  }
  return m;
}

}  // namespace

CertificateReport verify_certificate(const TrigPoly& f0, const PNorm& p,
                                     const std::vector<TrigPoly>& candidates,
                                     int N) {
  if (f0.is_zero()) throw DegenerateInputError("verify_certificate: f0 = 0");
  if (N < 1) throw ArgumentError("verify_certificate: N must be positive");
  candidate_degree_max(candidates);

  CertificateReport rep;
  const GridConfig g = certificate_grid(std::max(f0.band(), N), p, N);
  const std::size_t n = g.size;
  const std::vector<cd> h = duality_map(f0, p, g);
  const double f0_norm = lp_norm(f0, p, g);

  // (i) unit dual norm and Hoelder equality for the pairing
  rep.dual_norm = lp_norm_samples(h, p.dual());
  rep.pairing = pair(f0, h, g).real();
  const bool check_i = std::abs(rep.dual_norm - 1.0) <= 1e-8 &&
                       std::abs(rep.pairing - f0_norm) <= 1e-8;

  // (ii) frequency support concentrated on multiples of N; since N divides
  // the grid size the aliased coefficients keep their residue class mod N
  std::vector<cd> spec = h;
  fft::forward(spec);
  double mass_on = 0.0;
  double mass_off = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double m = std::norm(spec[k]);
    if (k % static_cast<std::size_t>(N) == 0)
      mass_on += m;
    else
      mass_off += m;
  }
  rep.off_support_mass = mass_off / std::max(mass_on + mass_off, 1e-300);
  const std::size_t shift = n / static_cast<std::size_t>(N);
  double defect = 0.0;
  if (n % static_cast<std::size_t>(N) == 0) {
    for (std::size_t j = 0; j < n; ++j)
      defect = std::max(defect, std::abs(h[(j + shift) % n] - h[j]));
  }
  rep.max_periodicity_defect = defect;
  const bool check_ii = rep.off_support_mass <= 1e-6 && defect <= 1e-8;

  // (iii) h annihilates e_1 psi_j: frequencies 1..n_j+1 miss N*Z
  bool check_iii = true;
  int first_bad = -1;
  rep.candidate_pairings.reserve(candidates.size());
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const TrigPoly& psi = candidates[j];
    double v = 0.0;
    if (!psi.is_zero()) v = std::abs(pair(psi.shifted(1), h, g));
    rep.candidate_pairings.push_back(v);
    if (v > 1e-8 && check_iii) {
      check_iii = false;
      first_bad = static_cast<int>(j);
    }
  }

  rep.ok = check_i && check_ii && check_iii;
  if (!check_i)
    rep.failing_index = std::abs(rep.dual_norm - 1.0) > 1e-8 ? 0 : 1;
  else if (!check_ii)
    rep.failing_index = 2;
  else if (!check_iii)
    rep.failing_index = 3 + first_bad;
  return rep;
}

WitnessReport build_witness(const PNorm& p, double epsilon,
                            const std::vector<TrigPoly>& candidates,
                            const NormEstimate& est) {
  if (epsilon < 0.0) throw ArgumentError("build_witness: epsilon must be >= 0");
  if (est.maximizer.is_zero())
    throw DegenerateInputError("build_witness: estimate has no maximizer");

  WitnessReport rep;
  rep.p = p.p();
  rep.epsilon = epsilon;
  rep.candidates = candidates;
  rep.N = candidate_degree_max(candidates) + 2;
  rep.weak_floor = est.value < 1.0;
  rep.floor = est.value - 2.0 * epsilon;

  rep.q = est.maximizer;
  rep.q0 = rep.q - TrigPoly::basis(0, rep.q.coeff(0));
  if (rep.q0.is_zero())
    throw DegenerateInputError("build_witness: extremizer is constant");

  // Re-normalize q on the certificate-scale grid so all norms below live on
  // one matched family of grids: the dilated grid is exactly N times the
  // base one, making the dilation isometry hold sample-for-sample.
  const GridConfig base_grid = certificate_grid(rep.q.band(), p, 1);
  const double qn = lp_norm(rep.q, p, base_grid);
  rep.q = rep.q * cd{1.0 / qn, 0.0};
  rep.q0 = rep.q0 * cd{1.0 / qn, 0.0};

  rep.witness = compose_eN(rep.q, rep.N);
  const TrigPoly f0 = compose_eN(rep.q0, rep.N);
  // T(e_{-1})(q o e_N) = e_{-1}(q0 o e_N), exactly at coefficient level
  const TrigPoly image = f0.shifted(-1);

  const GridConfig g{base_grid.size * static_cast<std::size_t>(rep.N),
                     base_grid.oversample};
  rep.witness_norm = lp_norm(rep.witness, p, g);
  rep.image_norm = lp_norm(image, p, g);

  rep.distances.reserve(candidates.size());
  for (const TrigPoly& phi : candidates)
    rep.distances.push_back(lp_norm(image - phi, p, g));

  rep.certificate = verify_certificate(f0, p, candidates, rep.N);
  rep.certificate_ok = rep.certificate.ok;
  return rep;
}

}
