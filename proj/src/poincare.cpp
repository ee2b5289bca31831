#include "mlab/poincare.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <omp.h>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "mlab/errors.hpp"

namespace mlab {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPi = std::numbers::pi;

template <class StateT, class Rhs>
void integrate(Rhs&& rhs, StateT& y, double t0, double t1, const IntegratorConfig& cfg) {
  using Stepper = odeint::runge_kutta_fehlberg78<StateT>;
  auto stepper = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol, cfg.max_step, Stepper());
  try {
    odeint::integrate_adaptive(stepper, rhs, y, t0, t1, std::min(0.01, cfg.max_step));
  } catch (const std::exception& e) {
    throw IntegrationFailure(std::string("integrator: ") + e.what());
  }
  for (const double v : y) {
    if (!std::isfinite(v)) throw IntegrationFailure("integrator: state became non-finite");
  }
}

State map_displacement(const ForcedSystem& sys, double eps, int m, const State& x, const IntegratorConfig& cfg) {
  const StroboscopicResult p = stroboscopic_map(sys, eps, m, {x[0], x[1]}, 0.0, cfg);
  return {std::remainder(p.x1_unwrapped - x[0], 2.0 * kPi), p.point.x2 - x[1]};
}

double norm(const State& v) { return std::hypot(v[0], v[1]); }

double circle_distance(const OrbitPoint& a, const OrbitPoint& b) {
  return std::hypot(std::remainder(a.x1 - b.x1, 2.0 * kPi), a.x2 - b.x2);
}

double distance_to_set(const OrbitPoint& p, const std::vector<OrbitPoint>& set) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& q : set) d = std::min(d, circle_distance(p, q));
  return d;
}

Matrix2 displacement_jacobian(const ForcedSystem& sys, double eps, int m, const State& x,
                              const IntegratorConfig& cfg) {
  Matrix2 jac{};
  for (int j = 0; j < 2; ++j) {
    const double h = 1e-6 * std::max(1.0, norm(x));
    State xp = x;
    State xm = x;
    xp[j] += h;
    xm[j] -= h;
    const State fp = map_displacement(sys, eps, m, xp, cfg);
    const State fm = map_displacement(sys, eps, m, xm, cfg);
    for (int i = 0; i < 2; ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
  }
  return jac;
}

std::array<cplx, 2> eigenvalues(const Matrix2& a) {
  const double tr = a[0][0] + a[1][1];
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const cplx disc = std::sqrt(cplx(0.25 * tr * tr - det, 0.0));
  return {0.5 * tr + disc, 0.5 * tr - disc};
}

struct NewtonOutcome {
  State x;
  double residual;
  bool converged;
  int iterations;
};

NewtonOutcome newton(const ForcedSystem& sys, double eps, int m, State x, const SubharmonicOptions& opt) {
  State f = map_displacement(sys, eps, m, x, opt.integrator);
  double res = norm(f);
  int it = 0;
  for (; it < opt.max_iterations && res > opt.tol; ++it) {
    const Matrix2 j = displacement_jacobian(sys, eps, m, x, opt.integrator);
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if (det == 0.0 || !std::isfinite(det)) break;
    State dx{-(j[1][1] * f[0] - j[0][1] * f[1]) / det, -(-j[1][0] * f[0] + j[0][0] * f[1]) / det};
    const double step = norm(dx);
    if (step > opt.max_step_norm) {
      dx[0] *= opt.max_step_norm / step;
      dx[1] *= opt.max_step_norm / step;
    }
    x[0] = std::remainder(x[0] + dx[0], 2.0 * kPi);
    x[1] += dx[1];
    try {
      f = map_displacement(sys, eps, m, x, opt.integrator);
    } catch (const IntegrationFailure&) {
      return {x, std::numeric_limits<double>::infinity(), false, it + 1};
    }
    res = norm(f);
    if (!std::isfinite(res)) break;
  }
  return {x, res, res <= opt.tol, it};
}

}  // namespace

StroboscopicResult stroboscopic_map(const ForcedSystem& sys, double eps, int m, const OrbitPoint& start,
                                    double theta_section, const IntegratorConfig& cfg) {
  if (!std::isfinite(start.x1) || !std::isfinite(start.x2)) throw DomainError("stroboscopic_map: non-finite start");
  if (m <= 0) throw DomainError("stroboscopic_map: m must be positive");
  const double omega = sys.omega();
  State y{start.x1, start.x2};
  auto rhs = [&](const State& x, State& dxdt, double s) { dxdt = sys.vector_field(x, omega * s + theta_section, eps); };
  integrate(rhs, y, 0.0, 2.0 * kPi * m / omega, cfg);
  const double reduced = std::remainder(y[0], 2.0 * kPi);
  const long winding = std::lround((y[0] - reduced - (start.x1 - std::remainder(start.x1, 2.0 * kPi))) / (2.0 * kPi));
  return {{reduced, y[1]}, y[0], winding};
}

std::vector<OrbitPoint> predicted_points(const Resonance& r, double theta0) {
  const OrbitFamily orbit = r.orbit();
  std::vector<OrbitPoint> pts;
  pts.reserve(r.m);
  for (int j = 0; j < r.m; ++j) {
    const double t = (2.0 * kPi * j - theta0) / r.omega;
    OrbitPoint p = orbit_state(orbit, t);
    p.x1 = std::remainder(p.x1, 2.0 * kPi);
    pts.push_back(p);
  }
  return pts;
}

FixedPointResult find_subharmonic(const ForcedSystem& sys, double eps, const Resonance& r, double theta0,
                                  const SubharmonicOptions& opt) {
  const std::vector<OrbitPoint> predicted = predicted_points(r, theta0);

  if (eps == 0.0) {
    const OrbitPoint p = predicted.front();
    const State x{p.x1, p.x2};
    const double res = norm(map_displacement(sys, 0.0, r.m, x, opt.integrator));
    return {p, theta0, res, 0.0, res <= opt.tol, 0, std::nullopt};
  }

  std::vector<State> seeds;
  for (const auto& p : predicted) seeds.push_back({p.x1, p.x2});
  const OrbitFamily orbit = r.orbit();
  for (int i = 0; i < opt.seed_grid; ++i) {
    const OrbitPoint p = orbit_state(orbit, orbit.period() * i / opt.seed_grid);
    seeds.push_back({std::remainder(p.x1, 2.0 * kPi), p.x2});
  }

  std::vector<NewtonOutcome> outcomes(seeds.size());
  const long count = static_cast<long>(seeds.size());
  const int nt = opt.threads > 0 ? opt.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt) if (opt.exec == Exec::Parallel)
  for (long i = 0; i < count; ++i) {
    try {
      outcomes[i] = newton(sys, eps, r.m, seeds[i], opt);
    } catch (const IntegrationFailure&) {
      outcomes[i] = {seeds[i], std::numeric_limits<double>::infinity(), false, 0};
    }
  }

  // Deterministic selection in seed order.
  const NewtonOutcome* best = nullptr;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes) {
    if (!o.converged) continue;
    const double d = distance_to_set({o.x[0], o.x[1]}, predicted);
    if (d < best_dist) {
      best_dist = d;
      best = &o;
    }
  }
  if (best == nullptr) {
    for (const auto& o : outcomes) {
      if (best == nullptr || o.residual < best->residual) best = &o;
    }
    const OrbitPoint p{best->x[0], best->x[1]};
    return {p, theta0, best->residual, distance_to_set(p, predicted), false, best->iterations, std::nullopt};
  }

  const OrbitPoint p{best->x[0], best->x[1]};
  Matrix2 dp = displacement_jacobian(sys, eps, r.m, best->x, opt.integrator);
  dp[0][0] += 1.0;
  dp[1][1] += 1.0;
  return {p, theta0, best->residual, best_dist, true, best->iterations, eigenvalues(dp)};
}

ScalingReport epsilon_scaling(const ForcedPendulum& sys, const Resonance& r, double theta0,
                              std::span<const double> eps_list, const SubharmonicOptions& opt) {
  ScalingReport rep;
  const MelnikovCurve curve = closed_form_subharmonic(r, sys.beta(), sys.delta());
  const ZeroSet zs = simple_zeros(curve);
  for (const auto& z : zs.zeros) {
    if (z.simple && std::abs(std::remainder(z.theta - theta0, 2.0 * kPi)) < 1e-8) rep.hypothesis_holds = true;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  bool all = true;
  int positive = 0;
  for (const double eps : eps_list) {
    ScalingRow row{eps, find_subharmonic(sys, eps, r, theta0, opt), std::numeric_limits<double>::quiet_NaN()};
    if (eps != 0.0) {
      ++positive;
      if (row.result.converged) {
        row.ratio = row.result.distance_to_unperturbed / std::abs(eps);
        lo = std::min(lo, row.ratio);
        hi = std::max(hi, row.ratio);
      } else {
        all = false;
      }
    }
    rep.rows.push_back(row);
  }
  rep.all_converged = all && positive > 0;
  rep.band = (rep.all_converged && lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
  rep.within_band = rep.all_converged && rep.band <= kScalingBand;
  return rep;
}

TangleStats homoclinic_tangle_probe(const ForcedSystem& sys, double eps, double horizon, int fan,
                                    const IntegratorConfig& cfg, Exec exec) {
  if (fan < 2 || !(horizon > 0.0)) throw DomainError("homoclinic_tangle_probe: need fan >= 2 and horizon > 0");
  using Aug = std::array<double, 6>;
  const OrbitFamily sep = OrbitFamily::homoclinic(+1);
  const double omega = sys.omega();
  TangleStats st;
  st.exponents.resize(fan);
  std::vector<double> energy(fan);
  std::vector<std::exception_ptr> errors(fan);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (int i = 0; i < fan; ++i) {
    try {
      const double s = -2.0 + 4.0 * i / (fan - 1);
      const OrbitPoint p = orbit_state(sep, s);
      Aug y{p.x1, p.x2, 1.0, 0.0, 0.0, 1.0};
      auto rhs = [&](const Aug& z, Aug& dz, double t) {
        const double phase = omega * t;
        const State f = sys.vector_field({z[0], z[1]}, phase, eps);
        const Matrix2 a = sys.field_jacobian({z[0], z[1]}, phase, eps);
        dz[0] = f[0];
        dz[1] = f[1];
        dz[2] = a[0][0] * z[2] + a[0][1] * z[4];
        dz[3] = a[0][0] * z[3] + a[0][1] * z[5];
        dz[4] = a[1][0] * z[2] + a[1][1] * z[4];
        dz[5] = a[1][0] * z[3] + a[1][1] * z[5];
      };
      // Transient along the separatrix first, then a fresh fundamental matrix.
      const double mid = 0.5 * horizon;
      integrate(rhs, y, 0.0, mid, cfg);
      y[2] = 1.0;
      y[3] = 0.0;
      y[4] = 0.0;
      y[5] = 1.0;
      integrate(rhs, y, mid, horizon, cfg);
      // Largest singular value of the 2x2 fundamental matrix.
      const double a = y[2], b = y[3], c = y[4], d = y[5];
      const double fro2 = a * a + b * b + c * c + d * d;
      const double det = a * d - b * c;
      const double smax2 = 0.5 * (fro2 + std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det)));
      st.exponents[i] = std::log(smax2) / horizon;
      energy[i] = sys.hamiltonian({y[0], y[1]});
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  double sum = 0.0;
  int captured = 0;
  st.max_exponent = -std::numeric_limits<double>::infinity();
  st.min_exponent = std::numeric_limits<double>::infinity();
  for (int i = 0; i < fan; ++i) {
    sum += st.exponents[i];
    st.max_exponent = std::max(st.max_exponent, st.exponents[i]);
    st.min_exponent = std::min(st.min_exponent, st.exponents[i]);
    if (energy[i] < 2.0) ++captured;
    st.max_final_energy = i == 0 ? energy[i] : std::max(st.max_final_energy, energy[i]);
  }
  st.mean_exponent = sum / fan;
  st.captured_fraction = static_cast<double>(captured) / fan;
  return st;
}

}  // namespace mlab
