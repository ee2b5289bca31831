#include "mlab/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mlab/contour.hpp"
#include "mlab/errors.hpp"
#include "mlab/sweep.hpp"

namespace mlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAgreeTol = 1e-8;
constexpr double kContourFraction = 0.2;

const char* verdict(bool applies) { return applies ? "applies" : "inconclusive"; }

Json curve_json(const CurveWitness& w) {
  return Json{{"family", std::string(to_string(w.family))},
              {"m", w.m},
              {"n", w.n},
              {"k", w.k},
              {"k_prime", w.k_prime},
              {"const_term", w.const_term},
              {"cos_coeff", w.cos_coeff},
              {"quadrature_gap", w.quadrature_gap},
              {"verified", w.verified}};
}

}  // namespace

Certificate certify(double beta, double delta, double omega, const CertificateOptions& opt) {
  if (!(beta >= 0.0) || !(delta >= 0.0)) throw DomainError("certify: beta and delta must be >= 0");
  if (!(omega > 0.0)) throw DomainError("certify: omega must be positive");
  Certificate c;
  c.beta = beta;
  c.delta = delta;
  c.omega = omega;
  c.options = opt;
  const ForcedPendulum sys(beta, delta, omega);
  const std::vector<double> quad_thetas{0.0, 0.5 * kPi, kPi};

  std::vector<Resonance> sample;
  for (const Family fam : {Family::Inner, Family::RotatingPlus, Family::RotatingMinus}) {
    for (const auto& r : resonance_table(fam, omega, opt.m_max, opt.n_max, Exec::Parallel, opt.threads)) {
      if (r) sample.push_back(*r);
    }
  }

  std::vector<CurveWitness> curves(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const Resonance& r = sample[i];
    const MelnikovCurve closed = closed_form_subharmonic(r, beta, delta, opt.j1);
    const std::vector<double> quad = quadrature_sweep(sys, r, quad_thetas, Exec::Parallel, opt.threads);
    double gap = 0.0;
    bool ok = true;
    for (std::size_t j = 0; j < quad_thetas.size(); ++j) {
      const double v = closed(quad_thetas[j]);
      gap = std::max(gap, std::abs(quad[j] - v));
      ok = ok && std::abs(quad[j] - v) <= kAgreeTol * (1.0 + std::abs(v));
    }
    curves[i] = {r.family, r.m, r.n, r.modulus.k(), r.modulus.k_prime(), closed.const_term, closed.cos_coeff, gap, ok};
  }
  for (const auto& w : curves) {
    if (w.verified && (w.const_term != 0.0 || w.cos_coeff != 0.0)) c.nonzero_witness.push_back(w);
    if (w.verified && w.cos_coeff != 0.0) c.nonconstant_witness.push_back(w);
  }

  // Homoclinic curves, checked against quadrature at the same phases.
  bool hom_verified = true;
  MelnikovCurve hom_closed{};
  const double hom_omega = opt.hom_phase == PhaseConvention::OmegaT ? omega : 1.0;
  for (const int sign : {+1, -1}) {
    hom_closed = closed_form_homoclinic(sign, beta, delta, hom_omega);
    const std::vector<double> quad = homoclinic_sweep(sys, sign, quad_thetas, opt.hom_phase, Exec::Parallel, opt.threads);
    for (std::size_t j = 0; j < quad_thetas.size(); ++j) {
      const double v = hom_closed(quad_thetas[j]);
      hom_verified = hom_verified && std::abs(quad[j] - v) <= kAgreeTol * (1.0 + std::abs(v));
    }
  }
  c.homoclinic_nonzero = hom_verified && !simple_zeros(hom_closed).identically_zero;
  c.homoclinic_nonconstant = hom_verified && hom_closed.cos_coeff != 0.0;

  c.prop_4a = {delta > 0.0 && !c.nonzero_witness.empty(), "delta > 0"};
  c.prop_4b = {beta > 0.0 && (!c.nonconstant_witness.empty() || c.homoclinic_nonconstant), "beta > 0"};

  // Contour integrals: one sweep of kernels per resonance, all theta synthesized.
  std::vector<Resonance> contour_sample;
  for (const auto& r : sample) {
    if (r.family != Family::RotatingMinus) contour_sample.push_back(r);
  }
  const std::vector<ContourKernels> kernels =
      contour_kernel_sweep(contour_sample, kContourFraction, Exec::Parallel, opt.threads);
  const std::vector<double> thetas = theta_grid(opt.theta_points);
  bool all_nonzero = !contour_sample.empty();
  for (std::size_t i = 0; i < contour_sample.size(); ++i) {
    const Resonance& r = contour_sample[i];
    double min_num = std::numeric_limits<double>::infinity();
    double min_closed = min_num;
    for (const double th : thetas) {
      min_num = std::min(min_num, std::abs(synthesize(kernels[i], r, th, beta, delta).value));
      min_closed = std::min(min_closed, std::abs(contour_integral_closed(r, th, beta).value));
    }
    const double scale = r.family == Family::Inner ? 1.0 : r.modulus.k();
    const double bound = 4.0 * kPi * beta * std::min(1.0, std::sinh(omega * scale * r.modulus.K_prime()));
    c.contour_witness.push_back({r.family, r.m, r.n, r.modulus.k(), min_num, min_closed, bound});
    all_nonzero = all_nonzero && min_num > 0.0 && min_num >= bound * (1.0 - 1e-8);
  }
  c.prop_4c = {beta > 0.0 && all_nonzero, "beta > 0"};
  c.chaos = chaos_condition(beta, delta, omega);
  return c;
}

Json to_json(const Certificate& c) {
  Json j;
  j["schema"] = "melnikov-cert/1";
  j["parameters"] = Json{{"beta", c.beta}, {"delta", c.delta}, {"omega", c.omega}, {"epsilon_note", c.options.epsilon_note}};
  j["conventions"] = Json{{"j1_arg", c.options.j1 == J1Argument::N ? "n" : "m"},
                          {"hom_phase", c.options.hom_phase == PhaseConvention::OmegaT ? "omega-t" : "t"}};
  j["sample"] = Json{{"m_max", c.options.m_max}, {"n_max", c.options.n_max}, {"theta_points", c.options.theta_points}};

  Json a{{"applies", c.prop_4a.applies}, {"verdict", verdict(c.prop_4a.applies)}, {"hypothesis", c.prop_4a.hypothesis},
         {"homoclinic_nonzero", c.homoclinic_nonzero}};
  a["witness"] = Json::array();
  for (const auto& w : c.nonzero_witness) a["witness"].push_back(curve_json(w));
  j["prop_4a"] = a;

  Json b{{"applies", c.prop_4b.applies}, {"verdict", verdict(c.prop_4b.applies)}, {"hypothesis", c.prop_4b.hypothesis},
         {"homoclinic_nonconstant", c.homoclinic_nonconstant}};
  b["witness"] = Json::array();
  for (const auto& w : c.nonconstant_witness) b["witness"].push_back(curve_json(w));
  j["prop_4b"] = b;

  Json cc{{"applies", c.prop_4c.applies}, {"verdict", verdict(c.prop_4c.applies)}, {"hypothesis", c.prop_4c.hypothesis}};
  cc["witness"] = Json::array();
  for (const auto& w : c.contour_witness) {
    cc["witness"].push_back(Json{{"family", std::string(to_string(w.family))},
                                 {"m", w.m},
                                 {"n", w.n},
                                 {"k", w.k},
                                 {"min_abs_numeric", w.min_abs_numeric},
                                 {"min_abs_closed", w.min_abs_closed},
                                 {"lower_bound", w.lower_bound}});
  }
  j["prop_4c"] = cc;

  j["chaos"] = Json{{"holds", c.chaos.holds},
                    {"ratio", c.chaos.ratio},
                    {"ratio_unbounded", std::isinf(c.chaos.ratio)},
                    {"threshold", chaos_threshold(c.omega)}};
  return j;
}

std::string summary(const Certificate& c) {
  std::ostringstream os;
  os << "beta=" << c.beta << " delta=" << c.delta << " omega=" << c.omega << '\n';
  os << "  4a (no real-analytic first integral):        " << verdict(c.prop_4a.applies) << "  ["
     << c.nonzero_witness.size() << " nonzero curves]\n";
  os << "  4b (real-analytic Bogoyavlenskij-nonint.):   " << verdict(c.prop_4b.applies) << "  ["
     << c.nonconstant_witness.size() << " nonconstant curves]\n";
  os << "  4c (complex-meromorphic Bogoyavlenskij-nonint.): " << verdict(c.prop_4c.applies) << "  ["
     << c.contour_witness.size() << " contour integrals]\n";
  os << "  chaos condition: " << (c.chaos.holds ? "holds" : "fails") << "  ratio=" << c.chaos.ratio << '\n';
  return os.str();
}

}  // namespace mlab
