#pragma once

#include <vector>

#include "normlab/estimate.hpp"

namespace normlab {

/// Result of the dual-certificate checks for f0 = q0 o e_N against the
/// candidate polynomials.
struct CertificateReport {
  bool ok = false;
  int failing_index = -1;  // -1 when ok; 0..2 for the named checks below,
                           // 3+j when candidate j's pairing check fails
  double dual_norm = 0.0;           // ||h||_{p'}, should be 1
  double pairing = 0.0;             // Re pair(f0, h), should equal ||f0||_p
  double off_support_mass = 0.0;    // relative coefficient mass off N*Z
  double max_periodicity_defect = 0.0;  // sup_j |h(theta_j + 2pi/N) - h(theta_j)|
  std::vector<double> candidate_pairings;  // |pair(e_1 psi_j, h)|
};

/// Output of the covering-radius witness construction: an element of the
/// image of the unit ball whose distance to every candidate is certified
/// from below.
struct WitnessReport {
  double p = 2.0;
  double epsilon = 0.0;
  TrigPoly q;        // unit-norm extremizer input
  TrigPoly q0;       // q minus its mean
  int N = 2;
  TrigPoly witness;  // q o e_N
  std::vector<TrigPoly> candidates;
  std::vector<double> distances;  // ||T(e_{-1})(q o e_N) - phi_j||_p
  double floor = 0.0;             // est.value - 2*epsilon
  bool certificate_ok = false;
  CertificateReport certificate;
  bool weak_floor = false;  // est.value < 1
  double witness_norm = 0.0;
  double image_norm = 0.0;  // ||T(e_{-1})(q o e_N)||_p
};

/// Mechanizes the covering argument: picks N = max_j deg(phi_j) + 2,
/// dilates the extremizer, measures every candidate distance by quadrature
/// and runs the dual-certificate checks. Candidates must be analytic.
WitnessReport build_witness(const PNorm& p, double epsilon,
                            const std::vector<TrigPoly>& candidates,
                            const NormEstimate& est);

/// The certificate alone: h = duality_map(f0, p) has unit dual norm, pairs
/// to ||f0||_p, is frequency-supported on multiples of N, and annihilates
/// e_1 psi_j for every candidate psi_j.
CertificateReport verify_certificate(const TrigPoly& f0, const PNorm& p,
                                     const std::vector<TrigPoly>& candidates,
                                     int N);

}
