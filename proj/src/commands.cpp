#include "mlab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "mlab/certificate.hpp"
#include "mlab/contour.hpp"
#include "mlab/errors.hpp"
#include "mlab/melnikov.hpp"
#include "mlab/output.hpp"
#include "mlab/poincare.hpp"
#include "mlab/sweep.hpp"

namespace mlab {

namespace {

constexpr double kPi = std::numbers::pi;

class NoResonance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return format_double(v); }

enum class Format { Csv, Json };

Format table_format(const CliOptions& o) {
  if (o.format.empty() || o.format == "csv") return Format::Csv;
  if (o.format == "json") return Format::Json;
  throw UsageError("--format must be csv or json");
}

void require_document_format(const CliOptions& o) {
  if (!o.format.empty() && o.format != "json") throw UsageError("this command emits JSON only");
}

Family family_flag(const CliOptions& o) {
  const auto f = parse_family(o.family);
  if (!f) throw UsageError("unknown --family '" + o.family + "'");
  return *f;
}

void require_omega(const CliOptions& o) {
  if (!(o.omega > 0.0) || !std::isfinite(o.omega)) throw UsageError("--omega must be positive");
}

void require_forcing(const CliOptions& o) {
  require_omega(o);
  if (!(o.beta >= 0.0) || !(o.delta >= 0.0)) throw UsageError("--beta and --delta must be >= 0");
  if (o.theta_points <= 0) throw UsageError("--theta-points must be positive");
}

J1Argument j1_flag(const CliOptions& o) {
  if (o.j1_arg == "n") return J1Argument::N;
  if (o.j1_arg == "m") return J1Argument::M;
  throw UsageError("--j1-arg must be n or m");
}

PhaseConvention phase_flag(const CliOptions& o) {
  if (o.hom_phase == "omega-t") return PhaseConvention::OmegaT;
  if (o.hom_phase == "t") return PhaseConvention::T;
  throw UsageError("--hom-phase must be omega-t or t");
}

Resonance resonance_flag(const CliOptions& o, Family fam) {
  if (is_homoclinic(fam)) throw UsageError("a periodic --family (inner, rotating+, rotating-) is required");
  if (o.m <= 0 || o.n <= 0) throw UsageError("--m and --n must be positive");
  if (std::gcd(o.m, o.n) != 1) throw UsageError("--m and --n must be coprime");
  const auto r = solve_resonance(fam, o.omega, o.m, o.n);
  if (!r) {
    std::ostringstream os;
    os << "no resonant orbit: family " << to_string(fam) << " has no k in (0,1) with m/n = " << o.m << "/" << o.n
       << " at omega = " << o.omega;
    if (fam == Family::Inner) os << " (inner orbits need m/n > omega)";
    throw NoResonance(os.str());
  }
  return *r;
}

Json resonance_json(const Resonance& r) {
  return Json{{"family", std::string(to_string(r.family))},
              {"m", r.m},
              {"n", r.n},
              {"k", r.modulus.k()},
              {"k_prime", r.modulus.k_prime()},
              {"period", r.orbit().period()},
              {"omega", r.omega},
              {"omega_check", resonance_omega_residual(r)}};
}

}  // namespace

CommandOutput cmd_resonances(const CliOptions& o) {
  require_omega(o);
  const Format format = table_format(o);
  const Family fam = family_flag(o);
  if (is_homoclinic(fam)) throw UsageError("resonances: --family must be inner or rotating");
  if (o.m_max <= 0 || o.n_max <= 0) throw UsageError("--m-max and --n-max must be positive");
  if (!(0.0 <= o.k_min && o.k_min < o.k_max && o.k_max <= 1.0)) {
    throw UsageError("--k-min/--k-max must satisfy 0 <= k-min < k-max <= 1");
  }

  const std::vector<Resonance> rows = enumerate_resonances(fam, o.omega, o.k_min, o.k_max, o.m_max, o.n_max);

  CommandOutput out;
  if (format == Format::Csv) {
    CsvTable t({"family", "m", "n", "k", "k_prime", "period", "omega_check"});
    for (const auto& r : rows) {
      t.add_row({std::string(to_string(r.family)), std::to_string(r.m), std::to_string(r.n), fmt(r.modulus.k()),
                 fmt(r.modulus.k_prime()), fmt(r.orbit().period()), fmt(resonance_omega_residual(r))});
    }
    out.data = t.str();
  } else {
    Json j{{"schema", "melnikov-resonances/1"}, {"omega", o.omega}, {"rows", Json::array()}};
    for (const auto& r : rows) j["rows"].push_back(resonance_json(r));
    out.data = dump_json(j);
  }
  out.message = std::to_string(rows.size()) + " resonances";
  return out;
}

CommandOutput cmd_melnikov(const CliOptions& o) {
  require_forcing(o);
  const Format format = table_format(o);
  const Family fam = family_flag(o);
  const J1Argument j1 = j1_flag(o);
  const PhaseConvention phase = phase_flag(o);
  const ForcedPendulum sys(o.beta, o.delta, o.omega);
  const std::vector<double> thetas = theta_grid(o.theta_points);
  const int threads = resolve_threads(o.threads);

  std::vector<double> quad;
  MelnikovCurve closed;
  Json head;
  if (o.homoclinic || is_homoclinic(fam)) {
    const int sign = is_homoclinic(fam) ? family_sign(fam) : +1;
    quad = homoclinic_sweep(sys, sign, thetas, phase, Exec::Parallel, threads);
    closed = closed_form_homoclinic(sign, o.beta, o.delta, phase == PhaseConvention::OmegaT ? o.omega : 1.0);
    head = Json{{"orbit", sign > 0 ? "homoclinic+" : "homoclinic-"}, {"hom_phase", o.hom_phase}};
  } else {
    const Resonance r = resonance_flag(o, fam);
    quad = quadrature_sweep(sys, r, thetas, Exec::Parallel, threads);
    closed = closed_form_subharmonic(r, o.beta, o.delta, j1);
    head = resonance_json(r);
    head["j1_arg"] = o.j1_arg;
  }

  double sup = 0.0;
  std::vector<double> diff(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    diff[i] = quad[i] - closed(thetas[i]);
    sup = std::max(sup, std::abs(diff[i]));
  }

  CommandOutput out;
  if (format == Format::Csv) {
    CsvTable t({"theta", "quadrature", "closed_form", "difference"});
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      t.add_row({fmt(thetas[i]), fmt(quad[i]), fmt(closed(thetas[i])), fmt(diff[i])});
    }
    out.data = t.str();
  } else {
    Json j{{"schema", "melnikov-curve/1"},
           {"orbit", head},
           {"beta", o.beta},
           {"delta", o.delta},
           {"omega", o.omega},
           {"closed_form", Json{{"const_term", closed.const_term}, {"cos_coeff", closed.cos_coeff}}},
           {"rows", Json::array()}};
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      j["rows"].push_back(Json{{"theta", thetas[i]}, {"quadrature", quad[i]}, {"closed_form", closed(thetas[i])},
                               {"difference", diff[i]}});
    }
    j["sup_difference"] = sup;
    out.data = dump_json(j);
  }
  out.message = "sup |quadrature - closed_form| = " + fmt(sup);
  return out;
}

CommandOutput cmd_contour(const CliOptions& o) {
  require_forcing(o);
  const Format format = table_format(o);
  const Family fam = family_flag(o);
  const Resonance r = resonance_flag(o, fam);
  const std::vector<double> thetas = theta_grid(o.theta_points);
  const std::vector<Resonance> one{r};
  constexpr double kFractions[3] = {0.05, 0.1, 0.2};

  std::vector<ContourKernels> kernels;
  std::vector<double> radii;
  for (const double f : kFractions) {
    kernels.push_back(contour_kernel_sweep(one, f, Exec::Serial).front());
    radii.push_back(f * admissible_radius(r));
  }

  double sup = 0.0;
  double spread_sup = 0.0;
  CsvTable t({"theta", "re_numeric", "im_numeric", "re_closed", "im_closed", "radius_1", "re_r1", "im_r1", "radius_2",
              "re_r2", "im_r2", "radius_3", "re_r3", "im_r3", "radius_spread"});
  Json rows = Json::array();
  for (const double th : thetas) {
    cplx v[3];
    for (int i = 0; i < 3; ++i) v[i] = synthesize(kernels[i], r, th, o.beta, o.delta).value;
    const cplx closed = contour_integral_closed(r, th, o.beta).value;
    const double spread = std::max({std::abs(v[0] - v[1]), std::abs(v[0] - v[2]), std::abs(v[1] - v[2])});
    sup = std::max(sup, std::abs(v[1] - closed));
    spread_sup = std::max(spread_sup, spread);
    t.add_row({fmt(th), fmt(v[1].real()), fmt(v[1].imag()), fmt(closed.real()), fmt(closed.imag()), fmt(radii[0]),
               fmt(v[0].real()), fmt(v[0].imag()), fmt(radii[1]), fmt(v[1].real()), fmt(v[1].imag()), fmt(radii[2]),
               fmt(v[2].real()), fmt(v[2].imag()), fmt(spread)});
    Json radius_block = Json::array();
    for (int i = 0; i < 3; ++i) {
      radius_block.push_back(Json{{"radius", radii[i]}, {"re", v[i].real()}, {"im", v[i].imag()}});
    }
    rows.push_back(Json{{"theta", th},
                        {"re_numeric", v[1].real()},
                        {"im_numeric", v[1].imag()},
                        {"re_closed", closed.real()},
                        {"im_closed", closed.imag()},
                        {"radii", radius_block},
                        {"radius_spread", spread}});
  }

  CommandOutput out;
  if (format == Format::Csv) {
    out.data = t.str();
  } else {
    Json j{{"schema", "melnikov-contour/1"}, {"resonance", resonance_json(r)}, {"beta", o.beta}, {"delta", o.delta},
           {"center_re", contour_center(r).real()}, {"center_im", contour_center(r).imag()}, {"rows", rows},
           {"sup_difference", sup}, {"sup_radius_spread", spread_sup}};
    out.data = dump_json(j);
  }
  out.message = "sup |numeric - closed| = " + fmt(sup) + ", radius spread = " + fmt(spread_sup);
  return out;
}

CommandOutput cmd_certify(const CliOptions& o) {
  require_forcing(o);
  require_document_format(o);
  if (o.sample_m_max <= 0 || o.sample_n_max <= 0) throw UsageError("--sample-m-max/--sample-n-max must be positive");
  CertificateOptions co;
  co.m_max = o.sample_m_max;
  co.n_max = o.sample_n_max;
  co.theta_points = o.theta_points;
  co.j1 = j1_flag(o);
  co.hom_phase = phase_flag(o);
  co.threads = resolve_threads(o.threads);
  const Certificate c = certify(o.beta, o.delta, o.omega, co);
  return {kExitOk, dump_json(to_json(c)), summary(c)};
}

CommandOutput cmd_verify(const CliOptions& o) {
  require_forcing(o);
  require_document_format(o);
  const Family fam = family_flag(o);
  const Resonance r = resonance_flag(o, fam);
  for (const double e : o.epsilons) {
    if (!std::isfinite(e) || std::abs(e) > 0.01) throw UsageError("--epsilon values must satisfy |eps| <= 0.01");
  }
  const ForcedPendulum sys(o.beta, o.delta, o.omega);
  const MelnikovCurve curve = closed_form_subharmonic(r, o.beta, o.delta, j1_flag(o));
  const ZeroSet zs = simple_zeros(curve);

  double theta0 = 0.0;
  std::string source = "explicit";
  if (o.theta0) {
    theta0 = *o.theta0;
  } else {
    source = "auto";
    const auto simple = std::find_if(zs.zeros.begin(), zs.zeros.end(), [](const CurveZero& z) { return z.simple; });
    if (simple != zs.zeros.end()) {
      theta0 = simple->theta;
    } else {
      // No simple zero: probe the phase of smallest |M| as a negative control.
      theta0 = std::abs(curve(0.0)) <= std::abs(curve(kPi)) ? 0.0 : kPi;
      source = "auto-min-abs";
    }
  }

  SubharmonicOptions so;
  const ScalingReport rep = epsilon_scaling(sys, r, theta0, o.epsilons, so);

  std::string marker = "ok";
  if (!rep.hypothesis_holds) {
    marker = "hypothesis-violated";
  } else if (!rep.within_band) {
    marker = "scaling-failed";
  }

  Json j{{"schema", "melnikov-verify/1"},
         {"resonance", resonance_json(r)},
         {"beta", o.beta},
         {"delta", o.delta},
         {"theta0", theta0},
         {"theta0_source", source},
         {"hypothesis_holds", rep.hypothesis_holds},
         {"rows", Json::array()}};
  for (const auto& row : rep.rows) {
    Json jr{{"epsilon", row.eps},
            {"converged", row.result.converged},
            {"residual", row.result.residual},
            {"distance_to_unperturbed", row.result.distance_to_unperturbed},
            {"ratio", row.ratio},
            {"x1", row.result.point.x1},
            {"x2", row.result.point.x2},
            {"iterations", row.result.iterations}};
    if (row.result.floquet_multipliers) {
      Json fm = Json::array();
      for (const cplx& z : *row.result.floquet_multipliers) fm.push_back(Json::array({z.real(), z.imag()}));
      jr["floquet_multipliers"] = fm;
    } else {
      jr["floquet_multipliers"] = nullptr;
    }
    j["rows"].push_back(jr);
  }
  j["scaling"] = Json{{"all_converged", rep.all_converged}, {"band", rep.band}, {"band_limit", kScalingBand},
                      {"within_band", rep.within_band}};
  j["marker"] = marker;

  std::ostringstream msg;
  msg << "verify " << to_string(r.family) << " m/n=" << r.m << "/" << r.n << " theta0=" << theta0 << ": " << marker
      << " (band " << rep.band << ")";
  return {kExitOk, dump_json(j), msg.str()};
}

CommandOutput run_command(const std::string& name, const CliOptions& o) {
  try {
    if (name == "resonances") return cmd_resonances(o);
    if (name == "melnikov") return cmd_melnikov(o);
    if (name == "contour") return cmd_contour(o);
    if (name == "certify") return cmd_certify(o);
    if (name == "verify") return cmd_verify(o);
    return {kExitUsage, "", "unknown command '" + name + "'"};
  } catch (const UsageError& e) {
    return {kExitUsage, "", std::string("usage error: ") + e.what()};
  } catch (const DomainError& e) {
    return {kExitUsage, "", std::string("usage error: ") + e.what()};
  } catch (const NoResonance& e) {
    return {kExitNoResonance, "", e.what()};
  } catch (const NonConvergence& e) {
    return {kExitNumerical, "", std::string("numerical non-convergence: ") + e.what()};
  } catch (const IntegrationFailure& e) {
    return {kExitNumerical, "", std::string("integration failure: ") + e.what()};
  } catch (const PoleProximity& e) {
    return {kExitNumerical, "", std::string("numerical failure: ") + e.what()};
  } catch (const SingleEnclosureViolation& e) {
    return {kExitNumerical, "", std::string("numerical failure: ") + e.what()};
  }
}

}  // namespace mlab
