#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitNoResonance = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flags shared by all subcommands.
struct CliOptions {
  std::string family = "inner";
  double omega = 1.0;
  double beta = 1.0;
  double delta = 0.0;
  int m = 1;
  int n = 1;
  int theta_points = 64;
  std::string out;
  std::string format;  // empty: csv for tables, json for documents
  std::optional<int> threads;

  // resonances
  int m_max = 9;
  int n_max = 1;
  double k_min = 0.0;
  double k_max = 1.0;

  // melnikov
  bool homoclinic = false;
  std::string j1_arg = "n";
  std::string hom_phase = "omega-t";

  // certify
  int sample_m_max = 5;
  int sample_n_max = 5;

  // verify
  std::vector<double> epsilons{1e-3, 5e-4, 2.5e-4};
  std::optional<double> theta0;
};

struct CommandOutput {
  int exit_code = kExitOk;
  std::string data;     // CSV or JSON document
  std::string message;  // human-readable summary
};

CommandOutput cmd_resonances(const CliOptions& o);
CommandOutput cmd_melnikov(const CliOptions& o);
CommandOutput cmd_contour(const CliOptions& o);
CommandOutput cmd_certify(const CliOptions& o);
CommandOutput cmd_verify(const CliOptions& o);

/// Dispatches by subcommand name, converting exceptions to exit codes.
CommandOutput run_command(const std::string& name, const CliOptions& o);

}  // namespace mlab
