#include "mlab/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mlab/errors.hpp"

namespace mlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

State ForcedSystem::hamiltonian_field(const State& x) const {
  const State g = grad_hamiltonian(x);
  return {g[1], -g[0]};
}

State ForcedSystem::vector_field(const State& x, double phase, double eps) const {
  State f = hamiltonian_field(x);
  if (eps != 0.0) {
    const State p = perturbation(x, phase);
    f[0] += eps * p[0];
    f[1] += eps * p[1];
  }
  return f;
}

Matrix2 ForcedSystem::field_jacobian(const State& x, double phase, double eps) const {
  Matrix2 jac{};
  for (int j = 0; j < 2; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
    State xp = x;
    State xm = x;
    xp[j] += h;
    xm[j] -= h;
    const State fp = vector_field(xp, phase, eps);
    const State fm = vector_field(xm, phase, eps);
    for (int i = 0; i < 2; ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
  }
  return jac;
}

ForcedPendulum::ForcedPendulum(double beta, double delta, double omega)
    : beta_(beta), delta_(delta), omega_(omega) {
  if (!(omega > 0.0)) throw DomainError("ForcedPendulum: omega must be positive");
  if (!(beta >= 0.0) || !(delta >= 0.0)) throw DomainError("ForcedPendulum: beta, delta must be >= 0");
}

double ForcedPendulum::hamiltonian(const State& x) const {
  return 1.0 - std::cos(x[0]) + 0.5 * x[1] * x[1];
}

State ForcedPendulum::grad_hamiltonian(const State& x) const { return {std::sin(x[0]), x[1]}; }

State ForcedPendulum::perturbation(const State& x, double phase) const {
  return {0.0, beta_ * std::cos(phase) - delta_ * x[1]};
}

Matrix2 ForcedPendulum::field_jacobian(const State& x, double, double eps) const {
  return {State{0.0, 1.0}, State{-std::cos(x[0]), -eps * delta_}};
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Inner: return "inner";
    case Family::RotatingPlus: return "rotating+";
    case Family::RotatingMinus: return "rotating-";
    case Family::HomoclinicPlus: return "homoclinic+";
    case Family::HomoclinicMinus: return "homoclinic-";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view s) {
  if (s == "inner") return Family::Inner;
  if (s == "rotating+" || s == "rotating" || s == "rotating-plus") return Family::RotatingPlus;
  if (s == "rotating-" || s == "rotating-minus") return Family::RotatingMinus;
  if (s == "homoclinic+" || s == "homoclinic" || s == "homoclinic-plus") return Family::HomoclinicPlus;
  if (s == "homoclinic-" || s == "homoclinic-minus") return Family::HomoclinicMinus;
  return std::nullopt;
}

bool is_homoclinic(Family f) { return f == Family::HomoclinicPlus || f == Family::HomoclinicMinus; }
bool is_rotating(Family f) { return f == Family::RotatingPlus || f == Family::RotatingMinus; }
int family_sign(Family f) {
  return (f == Family::RotatingMinus || f == Family::HomoclinicMinus) ? -1 : 1;
}

OrbitFamily OrbitFamily::inner(const EllipticModulus& k) { return OrbitFamily(Family::Inner, k); }

OrbitFamily OrbitFamily::rotating(const EllipticModulus& k, int sign) {
  return OrbitFamily(sign >= 0 ? Family::RotatingPlus : Family::RotatingMinus, k);
}

OrbitFamily OrbitFamily::homoclinic(int sign) {
  return OrbitFamily(sign >= 0 ? Family::HomoclinicPlus : Family::HomoclinicMinus, std::nullopt);
}

OrbitFamily OrbitFamily::make(Family tag, std::optional<EllipticModulus> k) {
  if (is_homoclinic(tag)) return OrbitFamily(tag, std::nullopt);
  if (!k) throw DomainError("OrbitFamily: periodic families need an elliptic modulus");
  return OrbitFamily(tag, k);
}

const EllipticModulus& OrbitFamily::modulus() const {
  if (!modulus_) throw DomainError("OrbitFamily: homoclinic orbits carry no modulus");
  return *modulus_;
}

double OrbitFamily::period() const {
  if (!modulus_) return std::numeric_limits<double>::infinity();
  if (tag_ == Family::Inner) return 4.0 * modulus_->K();
  return 2.0 * modulus_->k() * modulus_->K();
}

double OrbitFamily::energy() const {
  if (!modulus_) return 2.0;
  const double k = modulus_->k();
  return tag_ == Family::Inner ? 2.0 * k * k : 2.0 / (k * k);
}

OrbitPoint orbit_state(const OrbitFamily& f, double t) {
  const double s = family_sign(f.tag());
  if (is_homoclinic(f.tag())) {
    return {s * 2.0 * std::atan(std::sinh(t)), s * 2.0 / std::cosh(t)};
  }
  const EllipticModulus& m = f.modulus();
  const double k = m.k();
  if (f.tag() == Family::Inner) {
    const JacobiReal j = jacobi_real(t, m);
    // cos(x1/2) = dn, so atan2 keeps full accuracy where k sn is near 1.
    return {2.0 * std::atan2(k * j.sn, j.dn), 2.0 * k * j.cn};
  }
  const double u = t / k;
  const JacobiReal j = jacobi_real(u, m);
  return {s * 2.0 * jacobi_amplitude(u, m), s * 2.0 / k * j.dn};
}

ComplexOrbitPoint orbit_state(const OrbitFamily& f, cplx t) {
  const double s = family_sign(f.tag());
  if (is_homoclinic(f.tag())) {
    const cplx th = std::tanh(t);
    const cplx sech = 1.0 / std::cosh(t);
    return {s * th, s * 2.0 * th * sech, s * 2.0 * sech};
  }
  const EllipticModulus& m = f.modulus();
  const double k = m.k();
  if (f.tag() == Family::Inner) {
    const JacobiTriple j = jacobi_complex(t, m);
    return {k * j.sn, 2.0 * k * j.sn * j.dn, 2.0 * k * j.cn};
  }
  const JacobiTriple j = jacobi_complex(t / k, m);
  return {s * j.sn, s * 2.0 * j.sn * j.cn, s * 2.0 / k * j.dn};
}

double pendulum_energy(const OrbitPoint& p) { return 1.0 - std::cos(p.x1) + 0.5 * p.x2 * p.x2; }

double orbit_ode_residual(const OrbitFamily& f, std::span<const double> t_grid, double step) {
  double worst = 0.0;
  for (const double t : t_grid) {
    const OrbitPoint p = orbit_state(f, t);
    const OrbitPoint a = orbit_state(f, t - 2.0 * step);
    const OrbitPoint b = orbit_state(f, t - step);
    const OrbitPoint c = orbit_state(f, t + step);
    const OrbitPoint d = orbit_state(f, t + 2.0 * step);
    const double dx1 = (a.x1 - 8.0 * b.x1 + 8.0 * c.x1 - d.x1) / (12.0 * step);
    const double dx2 = (a.x2 - 8.0 * b.x2 + 8.0 * c.x2 - d.x2) / (12.0 * step);
    worst = std::max({worst, std::abs(dx1 - p.x2), std::abs(dx2 + std::sin(p.x1))});
  }
  return worst;
}

double separatrix_distance(const OrbitPoint& p) {
  // Separatrix as a 2pi-periodic graph y = 2|cos(x/2)| (mirrored for x2 < 0).
  const double x0 = std::remainder(p.x1, 2.0 * kPi);
  const double q = std::abs(p.x2);
  auto dist2 = [&](double x) {
    const double y = 2.0 * std::abs(std::cos(0.5 * x));
    return (x - x0) * (x - x0) + (y - q) * (y - q);
  };
  constexpr int kGrid = 512;
  const double lo = x0 - kPi;
  const double h = 2.0 * kPi / kGrid;
  int best = 0;
  double best_val = dist2(lo);
  for (int i = 1; i <= kGrid; ++i) {
    const double v = dist2(lo + i * h);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  // Golden-section refinement on the bracketing cells.
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo + (best - 1) * h;
  double b = lo + (best + 1) * h;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = dist2(c);
  double fd = dist2(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = dist2(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = dist2(d);
    }
  }
  return std::sqrt(std::min({best_val, fc, fd}));
}

double homoclinic_limit_distance(const OrbitFamily& f, int samples) {
  if (is_homoclinic(f.tag())) return 0.0;
  const double period = f.period();
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = period * static_cast<double>(i) / samples;
    sup = std::max(sup, separatrix_distance(orbit_state(f, t)));
  }
  return sup;
}

}  // namespace mlab
