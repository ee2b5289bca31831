#include "mlab/melnikov.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "mlab/errors.hpp"

namespace mlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUMin = 1e-300;
constexpr double kUMax = 700.0;
constexpr double kTailTol = 1e-13;

double sech(double x) { return 1.0 / std::cosh(x); }

// Bisection in ln(u) for an increasing function of u = -ln k'.
template <class F>
std::optional<double> bisect_u(F&& f, double target) {
  double lo = std::log(kUMin);
  double hi = std::log(kUMax);
  if (!(f(std::exp(lo)) < target) || !(f(std::exp(hi)) > target)) return std::nullopt;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(std::exp(mid)) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double ulo = std::exp(lo);
  const double uhi = std::exp(hi);
  return std::abs(f(ulo) - target) <= std::abs(f(uhi) - target) ? ulo : uhi;
}

double K_of_u(double u) { return EllipticModulus::from_log_complement(u).K(); }

double kK_of_u(double u) {
  const EllipticModulus m = EllipticModulus::from_log_complement(u);
  return m.k() * m.K();
}

void check_omega_consistency(const ForcedSystem& sys, const Resonance& r) {
  if (std::abs(sys.omega() - r.omega) > 1e-12 * std::max(1.0, r.omega)) {
    throw DomainError("subharmonic_quadrature: system and resonance frequencies differ");
  }
}

int pow2_at_least(double x) {
  const double c = std::max(64.0, std::ceil(x));
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(c)));
}

// Trapezoid with node doubling. sample(j, N) returns f at node j of N.
template <class Sample>
double doubling_trapezoid(Sample&& sample, double length, int n0, const QuadratureOptions& opt,
                          const char* what) {
  int n = n0;
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += sample(j, n);
  double prev = sum * length / n;
  while (2 * n <= opt.max_nodes) {
    for (int j = 1; j < 2 * n; j += 2) sum += sample(j, 2 * n);
    n *= 2;
    const double cur = sum * length / n;
    if (std::abs(cur - prev) <= opt.rel_tol * (1.0 + std::abs(cur))) return cur;
    prev = cur;
  }
  throw NonConvergence(std::string(what) + ": trapezoid did not converge within node budget");
}

}  // namespace

double Resonance::mapping_time() const { return 2.0 * kPi * m / omega; }

std::optional<Resonance> solve_resonance(Family family, double omega, int m, int n) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("solve_resonance: omega must be positive");
  if (m <= 0 || n <= 0) throw DomainError("solve_resonance: m and n must be positive");
  if (std::gcd(m, n) != 1) throw DomainError("solve_resonance: m and n must be coprime");
  if (is_homoclinic(family)) throw DomainError("solve_resonance: homoclinic orbits have no resonance");

  std::optional<double> u;
  if (family == Family::Inner) {
    const double target = kPi * m / (2.0 * n * omega);
    if (!(target > kPi / 2.0)) return std::nullopt;
    u = bisect_u(K_of_u, target);
  } else {
    u = bisect_u(kK_of_u, kPi * m / (n * omega));
  }
  if (!u) return std::nullopt;
  return Resonance{m, n, family, EllipticModulus::from_log_complement(*u), omega};
}

double resonance_omega_residual(const Resonance& r) {
  const EllipticModulus& k = r.modulus;
  const double implied = r.family == Family::Inner ? kPi * r.m / (2.0 * r.n * k.K())
                                                   : kPi * r.m / (r.n * k.k() * k.K());
  return std::abs(implied - r.omega);
}

double MelnikovCurve::operator()(double theta) const { return const_term + cos_coeff * std::cos(theta); }

double subharmonic_quadrature(const ForcedSystem& sys, const Resonance& r, double theta,
                              const QuadratureOptions& opt) {
  check_omega_consistency(sys, r);
  const OrbitFamily orbit = r.orbit();
  const double length = r.mapping_time();
  const double omega = sys.omega();
  auto sample = [&](int j, int n) {
    const double t = length * j / n;
    const OrbitPoint p = orbit_state(orbit, t);
    const State x{p.x1, p.x2};
    const State grad = sys.grad_hamiltonian(x);
    const State g = sys.perturbation(x, omega * t + theta);
    return grad[0] * g[0] + grad[1] * g[1];
  };
  return doubling_trapezoid(sample, length, pow2_at_least(length), opt, "subharmonic_quadrature");
}

double homoclinic_quadrature(const ForcedSystem& sys, int sign, double theta, PhaseConvention phase,
                             const QuadratureOptions& opt) {
  const OrbitFamily orbit = OrbitFamily::homoclinic(sign);
  const double half = 40.0 + 5.0 * std::log(1.0 / kTailTol);
  const double length = 2.0 * half;
  const double rate = phase == PhaseConvention::OmegaT ? sys.omega() : 1.0;
  // Nodes -half + j h, j = 0..N-1; the integrand is negligible at the ends,
  // so the sum is a periodic trapezoid over [-half, half).
  auto sample = [&](int j, int n) {
    const double t = -half + length * j / n;
    const OrbitPoint p = orbit_state(orbit, t);
    const State x{p.x1, p.x2};
    const State grad = sys.grad_hamiltonian(x);
    const State g = sys.perturbation(x, rate * t + theta);
    return grad[0] * g[0] + grad[1] * g[1];
  };
  return doubling_trapezoid(sample, length, pow2_at_least(length), opt, "homoclinic_quadrature");
}

MelnikovCurve closed_form_subharmonic(const Resonance& r, double beta, double delta, J1Argument arg) {
  const EllipticModulus& k = r.modulus;
  const double mult = arg == J1Argument::N ? r.n : r.m;
  MelnikovCurve c;
  c.provenance = Provenance::ClosedForm;
  if (r.family == Family::Inner) {
    const double kc2 = k.k_prime() * k.k_prime();
    const double j1 = 16.0 * mult * (k.E() - kc2 * k.K());
    const double j2 = (r.n == 1 && r.m % 2 == 1) ? 4.0 * kPi * sech(r.omega * k.K_prime()) : 0.0;
    c.const_term = -delta * j1;
    c.cos_coeff = beta * j2;
  } else {
    const double j1 = 8.0 * mult * k.E() / k.k();
    const double j2 = r.n == 1 ? 2.0 * kPi * sech(k.k() * r.omega * k.K_prime()) : 0.0;
    c.const_term = -delta * j1;
    c.cos_coeff = family_sign(r.family) * beta * j2;
  }
  if (c.const_term == 0.0) c.const_term = 0.0;  // drop -0
  if (c.cos_coeff == 0.0) c.cos_coeff = 0.0;
  return c;
}

MelnikovCurve closed_form_homoclinic(int sign, double beta, double delta, double omega) {
  MelnikovCurve c;
  c.provenance = Provenance::ClosedForm;
  c.const_term = delta == 0.0 ? 0.0 : -8.0 * delta;
  c.cos_coeff = beta == 0.0 ? 0.0 : (sign >= 0 ? 1.0 : -1.0) * 2.0 * kPi * beta * sech(0.5 * kPi * omega);
  return c;
}

MelnikovCurve quadrature_curve(const ForcedSystem& sys, const Resonance& r, const QuadratureOptions& opt) {
  const double m0 = subharmonic_quadrature(sys, r, 0.0, opt);
  const double mpi = subharmonic_quadrature(sys, r, kPi, opt);
  return {0.5 * (m0 + mpi), 0.5 * (m0 - mpi), Provenance::Quadrature};
}

ZeroSet simple_zeros(const MelnikovCurve& curve) {
  ZeroSet out;
  const double a = curve.const_term;
  const double b = curve.cos_coeff;
  if (a == 0.0 && b == 0.0) {
    out.identically_zero = true;
    return out;
  }
  if (b == 0.0) return out;
  const double gap = std::abs(a) - std::abs(b);
  if (std::abs(gap) <= kTangencyTol * std::max(1.0, std::abs(b))) {
    // a + b cos(theta) touches zero at theta = 0 (a = -b) or pi (a = b).
    out.tangency = true;
    out.zeros.push_back({(a * b < 0.0) ? 0.0 : kPi, 0.0, false});
    return out;
  }
  if (gap > 0.0) return out;
  const double theta0 = std::acos(-a / b);
  for (const double th : {theta0, 2.0 * kPi - theta0}) {
    const double slope = -b * std::sin(th);
    out.zeros.push_back({th, slope, std::abs(slope) > 1e-10});
  }
  return out;
}

double chaos_threshold(double omega) { return 4.0 / kPi * std::cosh(0.5 * kPi * omega); }

ChaosVerdict chaos_condition(double beta, double delta, double omega) {
  if (delta == 0.0) {
    if (beta > 0.0) return {true, std::numeric_limits<double>::infinity()};
    return {false, 0.0};
  }
  const double ratio = (beta / delta) / chaos_threshold(omega);
  return {ratio > 1.0, ratio};
}

std::vector<Resonance> enumerate_resonances(Family family, double omega, double k_lo, double k_hi,
                                            int m_max, int n_max) {
  if (!(0.0 <= k_lo && k_lo < k_hi && k_hi <= 1.0)) {
    throw DomainError("enumerate_resonances: window must satisfy 0 <= k_lo < k_hi <= 1");
  }
  std::vector<Resonance> out;
  for (int m = 1; m <= m_max; ++m) {
    for (int n = 1; n <= n_max; ++n) {
      if (std::gcd(m, n) != 1) continue;
      auto r = solve_resonance(family, omega, m, n);
      if (!r) continue;
      const double k = r->modulus.k();
      const bool below = k < k_hi || (k_hi == 1.0 && r->modulus.k_prime() > 0.0);
      if (k > k_lo && below) out.push_back(*r);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Resonance& a, const Resonance& b) {
    if (a.modulus.k() != b.modulus.k()) return a.modulus.k() < b.modulus.k();
    return a.modulus.k_prime() > b.modulus.k_prime();
  });
  return out;
}

double homoclinic_limit_value(Family family, int m, double beta, double delta, double omega,
                              double theta) {
  const MelnikovCurve plus = closed_form_homoclinic(+1, beta, delta, omega);
  const MelnikovCurve minus = closed_form_homoclinic(-1, beta, delta, omega);
  switch (family) {
    case Family::Inner:
      return plus(theta) + minus(theta + kPi * m);
    case Family::RotatingPlus:
      return plus(theta);
    case Family::RotatingMinus:
      return minus(theta);
    default:
      throw DomainError("homoclinic_limit_value: family must be Inner or Rotating");
  }
}

namespace {

constexpr double kSeriesCutoff = 1e-3;

// K(x) - pi/2 without cancellation for small x.
double K_minus_half_pi(double x) {
  if (x < kSeriesCutoff) {
    const double x2 = x * x;
    return 0.5 * kPi * x2 * (0.25 + x2 * (9.0 / 64.0 + x2 * 25.0 / 256.0));
  }
  return complete_K(x) - 0.5 * kPi;
}

// E(k) - 1 without cancellation for k' small.
double E_minus_one(const EllipticModulus& k) {
  const double x = k.k_prime();
  if (x < kSeriesCutoff) {
    const double x2 = x * x;
    const double L = std::log(4.0 / x);
    return 0.5 * x2 * (L - 0.5) + 3.0 / 16.0 * x2 * x2 * (L - 13.0 / 12.0);
  }
  return k.E() - 1.0;
}

// sech(a) - sech(b) given a - b.
double sech_difference(double a, double b, double a_minus_b) {
  return -2.0 * std::sinh(0.5 * (a + b)) * std::sinh(0.5 * a_minus_b) / (std::cosh(a) * std::cosh(b));
}

}  // namespace

MelnikovCurve limit_difference(const Resonance& r, double beta, double delta) {
  if (r.n != 1) throw DomainError("limit_difference: n must be 1");
  const EllipticModulus& k = r.modulus;
  const double w = r.omega;
  const double kc2 = k.k_prime() * k.k_prime();
  const double half = 0.5 * kPi * w;
  MelnikovCurve d;
  d.provenance = Provenance::ClosedForm;
  if (r.family == Family::Inner) {
    d.const_term = -16.0 * delta * (E_minus_one(k) - kc2 * k.K());
    if (r.m % 2 == 1) {
      const double a = w * k.K_prime();
      d.cos_coeff = 4.0 * kPi * beta * sech_difference(a, half, w * K_minus_half_pi(k.k_prime()));
    }
  } else {
    const double one_minus_k = kc2 / (1.0 + k.k());
    d.const_term = -8.0 * delta * (E_minus_one(k) + one_minus_k) / k.k();
    const double a = k.k() * w * k.K_prime();
    const double a_minus_b = w * (K_minus_half_pi(k.k_prime()) - one_minus_k * k.K_prime());
    d.cos_coeff = family_sign(r.family) * 2.0 * kPi * beta * sech_difference(a, half, a_minus_b);
  }
  return d;
}

std::vector<double> homoclinic_limit_check(Family family, double omega, double beta, double delta,
                                           std::span<const int> m_list,
                                           std::span<const double> thetas) {
  std::vector<double> gaps;
  gaps.reserve(m_list.size());
  for (const int m : m_list) {
    const auto r = solve_resonance(family, omega, m, 1);
    if (!r) throw DomainError("homoclinic_limit_check: resonance m/1 = " + std::to_string(m) + " not solvable");
    const MelnikovCurve diff = limit_difference(*r, beta, delta);
    double sup = 0.0;
    for (const double th : thetas) sup = std::max(sup, std::abs(diff(th)));
    gaps.push_back(sup);
  }
  return gaps;
}

}  // namespace mlab
