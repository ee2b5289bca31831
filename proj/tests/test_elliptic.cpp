#include <doctest.h>

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "mlab/elliptic.hpp"
#include "mlab/errors.hpp"

using namespace mlab;

namespace {

constexpr double kPi = std::numbers::pi;

double quad_K(double k) {
  auto f = [k](double p) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(p) * std::sin(p)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi / 2, 15, 1e-15);
}

double quad_E(double k) {
  auto f = [k](double p) { return std::sqrt(1.0 - k * k * std::sin(p) * std::sin(p)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi / 2, 15, 1e-15);
}

// Classical RK4 on s' = c d, c' = -s d, d' = -k^2 s c.
std::array<double, 3> jacobi_ode(double t, double k, int steps) {
  std::array<double, 3> y{0.0, 1.0, 1.0};
  auto rhs = [k](const std::array<double, 3>& v) {
    return std::array<double, 3>{v[1] * v[2], -v[0] * v[2], -k * k * v[0] * v[1]};
  };
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const auto a = rhs(y);
    std::array<double, 3> y2, y3, y4;
    for (int j = 0; j < 3; ++j) y2[j] = y[j] + 0.5 * h * a[j];
    const auto b = rhs(y2);
    for (int j = 0; j < 3; ++j) y3[j] = y[j] + 0.5 * h * b[j];
    const auto c = rhs(y3);
    for (int j = 0; j < 3; ++j) y4[j] = y[j] + h * c[j];
    const auto d = rhs(y4);
    for (int j = 0; j < 3; ++j) y[j] += h / 6.0 * (a[j] + 2 * b[j] + 2 * c[j] + d[j]);
  }
  return y;
}

}  // namespace

TEST_CASE("complete integrals at the endpoints") {
  CHECK(complete_K(0.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(std::abs(complete_K(1e-8) - kPi / 2) / (kPi / 2) <= 1e-14);
  CHECK(complete_E(0.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(complete_E(1.0) == 1.0);
  CHECK_THROWS_AS(complete_K(1.0), DomainError);
  CHECK_THROWS_AS(complete_K(-0.1), DomainError);
  CHECK_THROWS_AS(complete_E(1.5), DomainError);
}

TEST_CASE("complete integrals match Gauss-Kronrod quadrature") {
  for (double k : {0.1, 0.5, 0.8, 0.95, 0.999}) {
    CAPTURE(k);
    CHECK(std::abs(complete_K(k) - quad_K(k)) <= 1e-12 * quad_K(k));
    CHECK(std::abs(complete_E(k) - quad_E(k)) <= 1e-12);
  }
}

TEST_CASE("modulus invariants and monotonicity") {
  double prev_K = 0.0, prev_E = 10.0;
  for (int i = 1; i < 200; ++i) {
    const EllipticModulus m(i / 200.0);
    CHECK(std::abs(m.k() * m.k() + m.k_prime() * m.k_prime() - 1.0) <= 1e-14);
    CHECK(m.K() > kPi / 2);
    CHECK(m.E() < kPi / 2);
    CHECK(m.K() > prev_K);
    CHECK(m.E() < prev_E);
    prev_K = m.K();
    prev_E = m.E();
  }
  CHECK_THROWS_AS(EllipticModulus(0.0), DomainError);
  CHECK_THROWS_AS(EllipticModulus(1.0), DomainError);
}

TEST_CASE("Legendre relation on a 50-point grid") {
  for (int i = 1; i <= 50; ++i) {
    const EllipticModulus m(i / 51.0);
    const double lhs = m.E() * m.K_prime() + m.E_prime() * m.K() - m.K() * m.K_prime();
    CHECK(std::abs(lhs - kPi / 2) <= 1e-12);
  }
}

TEST_CASE("log-complement constructor keeps k' exact near k = 1") {
  const EllipticModulus m = EllipticModulus::from_log_complement(20.0);
  CHECK(m.k_prime() == doctest::Approx(std::exp(-20.0)).epsilon(1e-15));
  CHECK(m.K() == doctest::Approx(std::log(4.0) + 20.0).epsilon(1e-12));
  const EllipticModulus c = EllipticModulus::from_complement(0.6);
  CHECK(c.k() == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("jacobi_real special values") {
  const EllipticModulus m(0.7);
  const auto q = jacobi_real(m.K(), m);
  CHECK(std::abs(q.sn - 1.0) <= 1e-12);
  CHECK(std::abs(q.cn) <= 1e-12);
  CHECK(std::abs(q.dn - m.k_prime()) <= 1e-12);

  const EllipticModulus tiny(1e-10);
  for (double t : {-3.0, 0.4, 1.9, 7.5}) {
    const auto v = jacobi_real(t, tiny);
    CHECK(std::abs(v.sn - std::sin(t)) <= 1e-9);
    CHECK(std::abs(v.cn - std::cos(t)) <= 1e-9);
    CHECK(std::abs(v.dn - 1.0) <= 1e-9);
  }
}

TEST_CASE("jacobi_real matches the ODE oracle") {
  const EllipticModulus m(0.6);
  const auto ref = jacobi_ode(0.7, 0.6, 20000);
  const auto v = jacobi_real(0.7, m);
  CHECK(std::abs(v.sn - ref[0]) <= 1e-12);
  CHECK(std::abs(v.cn - ref[1]) <= 1e-12);
  CHECK(std::abs(v.dn - ref[2]) <= 1e-12);
}

TEST_CASE("jacobi_real periodicity and amplitude") {
  const EllipticModulus m(0.9);
  for (double t : {0.1, 1.7, -2.2}) {
    const auto a = jacobi_real(t, m);
    const auto b = jacobi_real(t + 4.0 * m.K(), m);
    CHECK(std::abs(a.sn - b.sn) <= 1e-12);
    CHECK(std::abs(a.cn - b.cn) <= 1e-12);
    CHECK(jacobi_amplitude(t + 4.0 * m.K(), m) == doctest::Approx(jacobi_amplitude(t, m) + 2 * kPi).epsilon(1e-13));
    CHECK(std::sin(jacobi_amplitude(t, m)) == doctest::Approx(a.sn).epsilon(1e-12));
  }
}

TEST_CASE("real identities over 1000 random points") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> kd(1e-6, 1.0 - 1e-6), td(-50.0, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const EllipticModulus m(kd(rng));
    const auto v = jacobi_real(td(rng), m);
    worst = std::max({worst, std::abs(v.sn * v.sn + v.cn * v.cn - 1.0),
                      std::abs(v.dn * v.dn + m.k() * m.k() * v.sn * v.sn - 1.0)});
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("complex identities over 200 random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> kd(0.05, 0.95), u(-1.0, 1.0);
  double worst = 0.0;
  int used = 0;
  while (used < 200) {
    const EllipticModulus m(kd(rng));
    const cplx t(3.0 * m.K() * u(rng), 2.0 * m.K_prime() * u(rng));
    if (pole_lattice_distance(t, m) < 0.05) continue;
    const auto v = jacobi_complex(t, m);
    worst = std::max({worst, std::abs(v.sn * v.sn + v.cn * v.cn - 1.0),
                      std::abs(v.dn * v.dn + m.k() * m.k() * v.sn * v.sn - 1.0)});
    ++used;
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("jacobi_complex consistency") {
  const EllipticModulus m(0.8);
  for (double t : {-1.3, 0.0, 0.5, 4.1}) {
    const auto c = jacobi_complex(cplx(t, 0.0), m);
    const auto r = jacobi_real(t, m);
    CHECK(std::abs(c.sn - r.sn) <= 1e-12);
    CHECK(std::abs(c.cn - r.cn) <= 1e-12);
    CHECK(std::abs(c.dn - r.dn) <= 1e-12);
  }
  const double v = 1e-4;
  const auto s = jacobi_complex(cplx(0.0, v), m);
  CHECK(std::abs(s.sn - cplx(0.0, v)) <= 1e-11);
  CHECK_THROWS_AS(jacobi_complex(cplx(0.0, m.K_prime()), m), PoleProximity);
  CHECK_THROWS_AS(jacobi_complex(cplx(2.0 * m.K(), m.K_prime() + 1e-10), m), PoleProximity);
}

TEST_CASE("cn has residue -i/k at iK'") {
  const EllipticModulus m(0.6);
  const cplx pole(0.0, m.K_prime());
  cplx est[2];
  const double hs[2] = {1e-3, 1e-4};
  for (int i = 0; i < 2; ++i) {
    const cplx h(hs[i], 0.0);
    est[i] = m.k() * h * jacobi_complex(pole + h, m).cn;
  }
  // First-order extrapolation in h.
  const cplx limit = est[1] + (est[1] - est[0]) * (hs[1] / (hs[0] - hs[1]));
  CHECK(std::abs(limit - cplx(0.0, -1.0)) <= 1e-7);
  CHECK(std::abs(est[1] - cplx(0.0, -1.0)) <= 1e-3);
}
