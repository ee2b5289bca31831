#include "mlab/contour.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "mlab/errors.hpp"

namespace mlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxContourNodes = 1 << 16;

double lattice_scale(const Resonance& r) { return r.family == Family::Inner ? 1.0 : r.modulus.k(); }

struct PoleDistances {
  double nearest;
  double next;
};

// Distances from w (unscaled lattice coordinates) to the two nearest points
// of {iK' + 2jK + 2l iK'}.
PoleDistances lattice_distances(cplx w, const EllipticModulus& m) {
  const double hx = 2.0 * m.K();
  const double hy = 2.0 * m.K_prime();
  const double j0 = std::nearbyint(w.real() / hx);
  const double l0 = std::nearbyint((w.imag() - m.K_prime()) / hy);
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = d1;
  for (int dj = -2; dj <= 2; ++dj) {
    for (int dl = -2; dl <= 2; ++dl) {
      const cplx p((j0 + dj) * hx, m.K_prime() + (l0 + dl) * hy);
      const double d = std::abs(w - p);
      if (d < d1) {
        d2 = d1;
        d1 = d;
      } else if (d < d2) {
        d2 = d;
      }
    }
  }
  return {d1, d2};
}

cplx circle_point(double radius, int j, int n) {
  const double phi = 2.0 * kPi * j / n;
  return std::polar(radius, phi);
}

}  // namespace

cplx orbit_pole(const Resonance& r) { return {0.0, lattice_scale(r) * r.modulus.K_prime()}; }

cplx contour_center(const Resonance& r) { return orbit_pole(r) + 0.5 * r.orbit().period(); }

double admissible_radius(const Resonance& r) {
  return lattice_scale(r) * std::min(r.modulus.K(), r.modulus.K_prime());
}

ContourSpec standard_contour(const Resonance& r, double fraction, double theta) {
  return {contour_center(r), fraction * admissible_radius(r), 64, theta};
}

void validate_contour(const Resonance& r, const ContourSpec& spec) {
  if (!(spec.radius > 0.0) || spec.nodes < 64) {
    throw SingleEnclosureViolation("contour: radius must be positive and nodes >= 64");
  }
  const double scale = lattice_scale(r);
  const double half_period = 0.5 * r.orbit().period();
  const PoleDistances d = lattice_distances((spec.center - half_period) / scale, r.modulus);
  const double nearest = scale * d.nearest;
  const double next = scale * d.next;
  if (std::abs(spec.radius - nearest) < kPoleClearance) {
    throw PoleProximity("contour: circle passes through a pole");
  }
  if (!(nearest < spec.radius) || !(spec.radius < 0.5 * next)) {
    throw SingleEnclosureViolation("contour: circle must enclose exactly one pole with radius below half the pole spacing");
  }
  const double right = r.mapping_time();
  if (!(spec.center.real() - spec.radius > 0.0) || !(spec.center.real() + spec.radius < right)) {
    throw SingleEnclosureViolation("contour: circle meets the excluded lines Re t = 0 or Re t = 2 pi m / omega");
  }
}

ContourKernels contour_kernels(const Resonance& r, const ContourSpec& spec, double rel_tol) {
  validate_contour(r, spec);
  const OrbitFamily orbit = r.orbit();
  const cplx shifted_center = spec.center - 0.5 * orbit.period();
  const double omega = r.omega;

  struct Sums {
    cplx d, c, s;
  };
  auto add_node = [&](Sums& acc, int j, int n) {
    const cplx offset = circle_point(spec.radius, j, n);
    const cplx s = shifted_center + offset;
    const cplx x2 = orbit_state(orbit, s).x2;
    const cplx w = offset;  // ds = i * offset * dphi
    acc.d += x2 * x2 * w;
    acc.c += x2 * std::cos(omega * s) * w;
    acc.s += x2 * std::sin(omega * s) * w;
  };
  auto finish = [](const Sums& acc, int n) {
    const cplx factor(0.0, 2.0 * kPi / n);
    return Sums{acc.d * factor, acc.c * factor, acc.s * factor};
  };

  int n = spec.nodes;
  Sums acc{};
  for (int j = 0; j < n; ++j) add_node(acc, j, n);
  Sums prev = finish(acc, n);
  while (2 * n <= kMaxContourNodes) {
    // Odd nodes of the doubled grid interleave the existing ones.
    for (int j = 1; j < 2 * n; j += 2) add_node(acc, j, 2 * n);
    n *= 2;
    const Sums cur = finish(acc, n);
    const double scale = 1.0 + std::max({std::abs(cur.c), std::abs(cur.s)});
    const double change =
        std::max({std::abs(cur.d - prev.d), std::abs(cur.c - prev.c), std::abs(cur.s - prev.s)});
    if (change <= rel_tol * scale) return {cur.d, cur.c, cur.s, n};
    prev = cur;
  }
  throw NonConvergence("contour_kernels: trapezoid on the circle did not converge");
}

ContourValue synthesize(const ContourKernels& kern, const Resonance& r, double theta, double beta,
                        double delta) {
  const cplx v = beta * (kern.cos_kernel * std::cos(theta) - kern.sin_kernel * std::sin(theta)) -
                 delta * kern.damping;
  return {v, theta, r.family};
}

ContourValue contour_integral_numeric(const Resonance& r, const ContourSpec& spec, double beta,
                                      double delta) {
  return synthesize(contour_kernels(r, spec), r, spec.theta, beta, delta);
}

ContourValue contour_integral_closed(const Resonance& r, double theta, double beta) {
  const double arg = r.omega * lattice_scale(r) * r.modulus.K_prime();
  const double sign = family_sign(r.family);
  const cplx v = sign * 4.0 * kPi * beta *
                 cplx(std::cosh(arg) * std::cos(theta), -std::sinh(arg) * std::sin(theta));
  return {v, theta, r.family};
}

cplx laurent_center(LaurentFunction fn, const Resonance& r) {
  const double kp = r.modulus.K_prime();
  return fn == LaurentFunction::DnScaled ? cplx(0.0, r.modulus.k() * kp) : cplx(0.0, kp);
}

LaurentProbe laurent_probe(LaurentFunction fn, const Resonance& r, std::span<const double> radii) {
  const EllipticModulus& m = r.modulus;
  const double k = m.k();
  const double omega = r.omega;
  const cplx c = laurent_center(fn, r);
  const double bound = (fn == LaurentFunction::DnScaled ? k : 1.0) * std::min(m.K(), m.K_prime());

  auto f = [&](cplx t) -> cplx {
    switch (fn) {
      case LaurentFunction::Cn: return jacobi_complex(t, m).cn;
      case LaurentFunction::Dn: return jacobi_complex(t, m).dn;
      case LaurentFunction::DnScaled: return jacobi_complex(t / k, m).dn;
      case LaurentFunction::CnSquared: {
        const cplx cn = jacobi_complex(t, m).cn;
        return cn * cn;
      }
      case LaurentFunction::CosOmega: return std::cos(omega * t);
      case LaurentFunction::SinOmega: return std::sin(omega * t);
      case LaurentFunction::CosCn: return jacobi_complex(t, m).cn * std::cos(omega * t);
      case LaurentFunction::SinCn: return jacobi_complex(t, m).cn * std::sin(omega * t);
    }
    return {};
  };

  LaurentProbe probe;
  for (const double rad : radii) {
    if (!(rad > kPoleClearance) || !(rad < bound)) {
      throw SingleEnclosureViolation("laurent_probe: radius outside the admissible annulus");
    }
    auto moments = [&](int n) {
      cplx res{}, cst{};
      for (int j = 0; j < n; ++j) {
        const cplx off = circle_point(rad, j, n);
        const cplx v = f(c + off);
        res += v * off;
        cst += v;
      }
      return std::pair{res / static_cast<double>(n), cst / static_cast<double>(n)};
    };
    int n = 128;
    auto prev = moments(n);
    while (true) {
      n *= 2;
      auto cur = moments(n);
      const double scale = 1.0 + std::abs(cur.first) + std::abs(cur.second);
      if (std::abs(cur.first - prev.first) + std::abs(cur.second - prev.second) <= 1e-13 * scale ||
          n >= kMaxContourNodes) {
        probe.samples.push_back({rad, cur.first, cur.second});
        break;
      }
      prev = cur;
    }
  }
  if (probe.samples.empty()) throw DomainError("laurent_probe: no radii given");
  const auto smallest = std::min_element(probe.samples.begin(), probe.samples.end(),
                                         [](const auto& a, const auto& b) { return a.radius < b.radius; });
  probe.residue = smallest->residue;
  probe.constant = smallest->constant;
  probe.spread = 0.0;
  for (const auto& a : probe.samples) {
    for (const auto& b : probe.samples) {
      probe.spread = std::max({probe.spread, std::abs(a.residue - b.residue), std::abs(a.constant - b.constant)});
    }
  }
  return probe;
}

double substitution_check(const EllipticModulus& m, double a, double b) {
  if (!(0.0 < a && a <= b && b <= m.K())) {
    throw DomainError("substitution_check: path must satisfy 0 < a <= b <= K(k)");
  }
  if (a == b) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  const double k = m.k();
  auto cn2 = [&](double t) {
    const double cn = jacobi_real(t, m).cn;
    return cn * cn;
  };
  // For s > 1 both factors under the root are negative; use the positive form.
  auto sub = [&](double s) { return std::sqrt((s * s - 1.0) / (s * s - k * k)) / (s * s); };
  const double lhs = gauss_kronrod<double, 31>::integrate(cn2, a, b, 15, 1e-15);
  const double sa = 1.0 / jacobi_real(a, m).sn;
  const double sb = 1.0 / jacobi_real(b, m).sn;
  // s decreases along the path (sa > sb).
  const double rhs = gauss_kronrod<double, 31>::integrate(sub, sb, sa, 15, 1e-15);
  return std::abs(lhs - rhs);
}

}  // namespace mlab
