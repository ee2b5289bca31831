#include "mlab/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "mlab/errors.hpp"

namespace mlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxAgmSteps = 64;

struct AgmResult {
  double K;
  double E;
};

// AGM of (1, kc) with the running sum for E. c0 = k.
AgmResult agm_integrals(double k, double kc) {
  double a = 1.0;
  double b = kc;
  double sum = 0.5 * k * k;
  double weight = 0.5;
  for (int i = 0; i < kMaxAgmSteps; ++i) {
    if (std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * a) break;
    const double c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    weight *= 2.0;
    sum += weight * c * c;
  }
  const double K = kPi / (2.0 * a);
  return {K, K * (1.0 - sum)};
}

double complement_of(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

struct Descent {
  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  int n = 0;
};

Descent agm_descent(double k, double kc) {
  Descent d;
  double a = 1.0;
  double b = kc;
  double c = k;
  d.a[0] = a;
  d.c[0] = c;
  while (std::abs(c) > std::numeric_limits<double>::epsilon() * a && d.n < kMaxAgmSteps) {
    const double an = 0.5 * (a + b);
    const double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    c = cn;
    ++d.n;
    d.a[d.n] = a;
    d.c[d.n] = c;
  }
  return d;
}

// Amplitude for |u| <= 2K (no reduction).
double amplitude_reduced(double u, double k, double kc) {
  const Descent d = agm_descent(k, kc);
  double phi = std::ldexp(d.a[d.n] * u, d.n);
  for (int i = d.n; i > 0; --i) {
    phi = 0.5 * (phi + std::asin(d.c[i] / d.a[i] * std::sin(phi)));
  }
  return phi;
}

struct Reduced {
  double u;
  double turns;
};

Reduced reduce_quarter(double t, double K) {
  const double period = 4.0 * K;
  const double turns = std::nearbyint(t / period);
  return {t - turns * period, turns};
}

JacobiReal jacobi_pair(double t, double k, double kc, double K) {
  const Reduced r = reduce_quarter(t, K);
  const double phi = amplitude_reduced(r.u, k, kc);
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn^2 = k'^2 + k^2 cn^2 has no cancellation, unlike 1 - k^2 sn^2.
  const double dn = std::sqrt(kc * kc + k * k * cn * cn);
  return {sn, cn, dn};
}

}  // namespace

double complete_K(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("complete_K: modulus must satisfy 0 <= k < 1");
  return agm_integrals(k, complement_of(k)).K;
}

double complete_E(double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw DomainError("complete_E: modulus must satisfy 0 <= k <= 1");
  if (k == 1.0) return 1.0;
  return agm_integrals(k, complement_of(k)).E;
}

EllipticModulus::EllipticModulus(double k) : EllipticModulus(k, complement_of(k), true) {}

EllipticModulus EllipticModulus::from_complement(double k_prime) {
  if (!(k_prime > 0.0 && k_prime < 1.0)) {
    throw DomainError("EllipticModulus: complementary modulus must lie in (0,1)");
  }
  return EllipticModulus(complement_of(k_prime), k_prime, true);
}

EllipticModulus EllipticModulus::from_log_complement(double u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("EllipticModulus: u = -ln k' must be positive");
  const double kc = std::exp(-u);
  if (kc == 0.0) throw DomainError("EllipticModulus: k' underflows");
  return EllipticModulus(std::sqrt(-std::expm1(-2.0 * u)), kc, true);
}

EllipticModulus::EllipticModulus(double k, double kc, bool checked) : k_(k), kc_(kc) {
  // Either member may round to 1 at the extremes; the other stays exact.
  if (checked && !(k > 0.0 && k <= 1.0 && kc > 0.0 && kc <= 1.0)) {
    throw DomainError("EllipticModulus: k must lie in the open interval (0,1)");
  }
  if (kc_ > 0.0) {
    const AgmResult main = agm_integrals(k_, kc_);
    K_ = main.K;
    E_ = main.E;
  } else {
    K_ = std::numeric_limits<double>::infinity();
    E_ = 1.0;
  }
  if (k_ > 0.0) {
    const AgmResult comp = agm_integrals(kc_, k_);
    Kc_ = comp.K;
    Ec_ = comp.E;
  } else {
    Kc_ = std::numeric_limits<double>::infinity();
    Ec_ = 1.0;
  }
}

EllipticModulus EllipticModulus::complement() const { return EllipticModulus(kc_, k_, false); }

JacobiReal jacobi_real(double t, const EllipticModulus& m) {
  if (!std::isfinite(t)) throw DomainError("jacobi_real: argument must be finite");
  if (!std::isfinite(m.K())) {
    // k = 1: sn = tanh, cn = dn = sech.
    const double s = 1.0 / std::cosh(t);
    return {std::tanh(t), s, s};
  }
  return jacobi_pair(t, m.k(), m.k_prime(), m.K());
}

double jacobi_amplitude(double t, const EllipticModulus& m) {
  if (!std::isfinite(t)) throw DomainError("jacobi_amplitude: argument must be finite");
  if (!std::isfinite(m.K())) return 2.0 * std::atan(std::tanh(0.5 * t));
  const Reduced r = reduce_quarter(t, m.K());
  return amplitude_reduced(r.u, m.k(), m.k_prime()) + 2.0 * kPi * r.turns;
}

double pole_lattice_distance(cplx t, const EllipticModulus& m) {
  const double hx = 2.0 * m.K();
  const double hy = 2.0 * m.K_prime();
  const double dx = t.real() - hx * std::nearbyint(t.real() / hx);
  const double y = t.imag() - m.K_prime();
  const double dy = y - hy * std::nearbyint(y / hy);
  return std::hypot(dx, dy);
}

JacobiTriple jacobi_complex(cplx t, const EllipticModulus& m) {
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
    throw DomainError("jacobi_complex: argument must be finite");
  }
  if (pole_lattice_distance(t, m) < kPoleClearance) {
    throw PoleProximity("jacobi_complex: argument within pole clearance of iK' lattice");
  }
  const JacobiReal re = jacobi_real(t.real(), m);
  if (t.imag() == 0.0) return {re.sn, re.cn, re.dn};
  const JacobiReal im = jacobi_real(t.imag(), m.complement());
  const double k2 = m.k() * m.k();
  const double den = im.cn * im.cn + k2 * re.sn * re.sn * im.sn * im.sn;
  const cplx sn(re.sn * im.dn, re.cn * re.dn * im.sn * im.cn);
  const cplx cn(re.cn * im.cn, -re.sn * re.dn * im.sn * im.dn);
  const cplx dn(re.dn * im.cn * im.dn, -k2 * re.sn * re.cn * im.sn);
  return {sn / den, cn / den, dn / den};
}

}  // namespace mlab
