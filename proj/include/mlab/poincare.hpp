#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mlab/exec.hpp"
#include "mlab/melnikov.hpp"

namespace mlab {

/// Adaptive embedded Runge-Kutta (Fehlberg 7(8)) settings.
struct IntegratorConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double max_step = 0.05;
};

struct StroboscopicResult {
  OrbitPoint point;   // x1 reduced to (-pi, pi]
  double x1_unwrapped;
  long winding;       // number of 2 pi turns of x1 over the mapping time
};

/// Flow of x' = J DH(x) + eps g(x, omega s + theta_section) over
/// s in [0, 2 pi m / omega]. Throws IntegrationFailure.
StroboscopicResult stroboscopic_map(const ForcedSystem& sys, double eps, int m, const OrbitPoint& start,
                                    double theta_section = 0.0, const IntegratorConfig& cfg = {});

struct FixedPointResult {
  OrbitPoint point;
  double phase;                   // predicted Melnikov zero theta0
  double residual;                // |P(x) - x| with x1 on the circle
  double distance_to_unperturbed; // to the nearest predicted point x(t*), omega t* + theta0 = 0 mod 2 pi
  bool converged;
  int iterations;
  std::optional<std::array<cplx, 2>> floquet_multipliers;
};

struct SubharmonicOptions {
  IntegratorConfig integrator{};
  int seed_grid = 32;
  int max_iterations = 40;
  double tol = 1e-10;
  double max_step_norm = 0.5;
  Exec exec = Exec::Parallel;  // Newton runs from the seeds
  int threads = 0;             // 0: OpenMP default
};

/// Points of the unperturbed resonant orbit where the forcing phase equals
/// the section phase 0 when the orbit is phased by theta0.
std::vector<OrbitPoint> predicted_points(const Resonance& r, double theta0);

/// Newton on P(x) - x for the time-2 pi m / omega map (section phase 0),
/// seeded at the predicted points and a grid over one unperturbed period.
/// Returns the converged fixed point closest to the predicted points, or
/// the best unconverged attempt with converged = false.
FixedPointResult find_subharmonic(const ForcedSystem& sys, double eps, const Resonance& r, double theta0,
                                  const SubharmonicOptions& opt = {});

struct ScalingRow {
  double eps;
  FixedPointResult result;
  double ratio;  // distance / eps; NaN for eps = 0 or unconverged
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  bool all_converged = false;
  double band = 0.0;          // max ratio / min ratio over eps > 0
  bool within_band = false;   // all_converged and band <= kScalingBand
  bool hypothesis_holds = false;  // theta0 is a simple zero of the closed-form curve
};

inline constexpr double kScalingBand = 2.0;

ScalingReport epsilon_scaling(const ForcedPendulum& sys, const Resonance& r, double theta0,
                              std::span<const double> eps_list, const SubharmonicOptions& opt = {});

struct TangleStats {
  std::vector<double> exponents;  // finite-time Lyapunov exponent per fan member, second half
  double mean_exponent = 0.0;
  double max_exponent = 0.0;
  double min_exponent = 0.0;
  double captured_fraction = 0.0;  // fan members ending with H < 2
  double max_final_energy = 0.0;
};

/// Integrates a fan of initial conditions x_h+(s), s in [-2, 2], together
/// with the variational equation. Each exponent is ln(sigma_max(Phi))/(horizon/2)
/// for the fundamental matrix Phi over [horizon/2, horizon].
TangleStats homoclinic_tangle_probe(const ForcedSystem& sys, double eps, double horizon, int fan = 16,
                                    const IntegratorConfig& cfg = {}, Exec exec = Exec::Parallel);

}  // namespace mlab
