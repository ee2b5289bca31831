#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "mlab/commands.hpp"

namespace {

void add_common(CLI::App* sub, mlab::CliOptions& o) {
  sub->add_option("--family", o.family, "inner, rotating+, rotating-, homoclinic+, homoclinic-");
  sub->add_option("--omega", o.omega, "forcing frequency");
  sub->add_option("--beta", o.beta, "forcing amplitude");
  sub->add_option("--delta", o.delta, "damping");
  sub->add_option("--theta-points", o.theta_points, "phase grid size");
  sub->add_option("--out", o.out, "output file (default stdout)");
  sub->add_option("--format", o.format, "csv or json");
  sub->add_option("--threads", o.threads, "worker threads");
  sub->add_option("--m", o.m, "period multiple");
  sub->add_option("--n", o.n, "orbit winding");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"melnikov-lab: Melnikov analysis of the forced damped pendulum"};
  app.require_subcommand(1);
  mlab::CliOptions o;

  auto* res = app.add_subcommand("resonances", "table of resonant orbits");
  add_common(res, o);
  res->add_option("--m-max", o.m_max, "largest m");
  res->add_option("--n-max", o.n_max, "largest n");
  res->add_option("--k-min", o.k_min, "lower modulus bound");
  res->add_option("--k-max", o.k_max, "upper modulus bound");

  auto* mel = app.add_subcommand("melnikov", "subharmonic or homoclinic Melnikov curve");
  add_common(mel, o);
  mel->add_flag("--homoclinic", o.homoclinic, "use the separatrix");
  mel->add_option("--j1-arg", o.j1_arg, "n or m");
  mel->add_option("--hom-phase", o.hom_phase, "omega-t or t");

  auto* con = app.add_subcommand("contour", "complex contour integral around the orbit pole");
  add_common(con, o);

  auto* cert = app.add_subcommand("certify", "nonintegrability and chaos certificate");
  add_common(cert, o);
  cert->add_option("--sample-m-max", o.sample_m_max, "largest sampled m");
  cert->add_option("--sample-n-max", o.sample_n_max, "largest sampled n");
  cert->add_option("--j1-arg", o.j1_arg, "n or m");
  cert->add_option("--hom-phase", o.hom_phase, "omega-t or t");

  auto* ver = app.add_subcommand("verify", "subharmonic fixed points of the stroboscopic map");
  add_common(ver, o);
  ver->add_option("--eps", o.epsilons, "perturbation sizes")->delimiter(',');
  ver->add_option("--theta0", o.theta0, "Melnikov zero (default: first simple zero)");
  ver->add_option("--j1-arg", o.j1_arg, "n or m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mlab::kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const mlab::CommandOutput out = mlab::run_command(name, o);
  if (out.exit_code != mlab::kExitOk) {
    std::cerr << "melnikov-lab " << name << ": " << out.message << '\n';
    return out.exit_code;
  }
  if (o.out.empty() || o.out == "-") {
    std::cout << out.data;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "melnikov-lab: cannot write " << o.out << '\n';
      return mlab::kExitUsage;
    }
    f << out.data;
    std::cout << out.message << '\n';
    return mlab::kExitOk;
  }
  std::cerr << out.message << '\n';
  return mlab::kExitOk;
}
