#pragma once

#include <string>
#include <vector>

#include "mlab/melnikov.hpp"
#include "mlab/output.hpp"

namespace mlab {

struct CertificateOptions {
  int m_max = 5;
  int n_max = 5;
  int theta_points = 64;
  J1Argument j1 = J1Argument::N;
  PhaseConvention hom_phase = PhaseConvention::OmegaT;
  std::string epsilon_note = "0 < |epsilon| << 1 (first-order theory)";
  int threads = 0;
};

struct CurveWitness {
  Family family;
  int m;
  int n;
  double k;
  double k_prime;
  double const_term;
  double cos_coeff;
  double quadrature_gap;  // sup over sampled theta of |quadrature - closed form|
  bool verified;          // quadrature_gap <= 1e-8 (1 + |value|)
};

struct ContourWitness {
  Family family;
  int m;
  int n;
  double k;
  double min_abs_numeric;  // min over the theta grid of |I(theta)|
  double min_abs_closed;
  double lower_bound;      // 4 pi beta min(1, sinh(omega K'))
};

struct PropositionVerdict {
  bool applies = false;
  std::string hypothesis;
};

/// Which of the nonintegrability results (real-analytic first integral,
/// real-analytic and complex-meromorphic Bogoyavlenskij integrability) are
/// supported numerically for given (beta, delta, omega).
struct Certificate {
  double beta;
  double delta;
  double omega;
  CertificateOptions options;

  PropositionVerdict prop_4a;  // delta > 0 and a verified nonzero Melnikov curve
  std::vector<CurveWitness> nonzero_witness;
  bool homoclinic_nonzero = false;

  PropositionVerdict prop_4b;  // beta > 0 and nonconstant curves
  std::vector<CurveWitness> nonconstant_witness;
  bool homoclinic_nonconstant = false;

  PropositionVerdict prop_4c;  // beta > 0 and nonvanishing contour integral
  std::vector<ContourWitness> contour_witness;

  ChaosVerdict chaos;
};

Certificate certify(double beta, double delta, double omega, const CertificateOptions& opt = {});

/// "melnikov-cert/1" document.
Json to_json(const Certificate& c);
std::string summary(const Certificate& c);

}  // namespace mlab
