#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mlab/errors.hpp"
#include "mlab/pendulum.hpp"

using namespace mlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Delegates everything but the Jacobian, so the base-class finite
// differences are exercised.
class Wrapped final : public ForcedSystem {
 public:
  explicit Wrapped(const ForcedPendulum& p) : p_(p) {}
  double hamiltonian(const State& x) const override { return p_.hamiltonian(x); }
  State grad_hamiltonian(const State& x) const override { return p_.grad_hamiltonian(x); }
  State perturbation(const State& x, double phase) const override { return p_.perturbation(x, phase); }
  double omega() const override { return p_.omega(); }

 private:
  ForcedPendulum p_;
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("pendulum Hamiltonian, gradient and perturbation") {
  const ForcedPendulum p(0.7, 0.3, 1.2);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const State x{u(rng), u(rng)};
    const double h = 1e-5;
    const double d1 = (p.hamiltonian({x[0] + h, x[1]}) - p.hamiltonian({x[0] - h, x[1]})) / (2 * h);
    const double d2 = (p.hamiltonian({x[0], x[1] + h}) - p.hamiltonian({x[0], x[1] - h})) / (2 * h);
    const State g = p.grad_hamiltonian(x);
    CHECK(std::abs(g[0] - d1) <= 1e-6);
    CHECK(std::abs(g[1] - d2) <= 1e-6);
    CHECK(p.hamiltonian(x) == doctest::Approx(1.0 - std::cos(x[0]) + 0.5 * x[1] * x[1]));
    const State f = p.perturbation(x, 0.4);
    CHECK(f[0] == 0.0);
    CHECK(f[1] == doctest::Approx(0.7 * std::cos(0.4) - 0.3 * x[1]));
  }
  CHECK_THROWS_AS(ForcedPendulum(-1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(ForcedPendulum(1.0, 0.0, 0.0), DomainError);
}

TEST_CASE("exact Jacobian agrees with the finite-difference default") {
  const ForcedPendulum p(1.0, 0.5, 1.0);
  const Wrapped w(p);
  for (const State x : {State{0.3, -0.2}, State{2.5, 1.1}, State{-1.0, 0.0}}) {
    const Matrix2 a = p.field_jacobian(x, 0.7, 0.01);
    const Matrix2 b = w.field_jacobian(x, 0.7, 0.01);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(a[i][j] - b[i][j]) <= 1e-7);
  }
}

TEST_CASE("family tags") {
  CHECK(parse_family("inner") == Family::Inner);
  CHECK(parse_family("rotating+") == Family::RotatingPlus);
  CHECK(parse_family("rotating-") == Family::RotatingMinus);
  CHECK(parse_family("homoclinic-") == Family::HomoclinicMinus);
  CHECK_FALSE(parse_family("outer").has_value());
  for (Family f : {Family::Inner, Family::RotatingPlus, Family::RotatingMinus, Family::HomoclinicPlus,
                   Family::HomoclinicMinus}) {
    CHECK(parse_family(to_string(f)) == f);
  }
  CHECK(family_sign(Family::RotatingMinus) == -1);
  CHECK(is_rotating(Family::RotatingPlus));
  CHECK(is_homoclinic(Family::HomoclinicPlus));
}

TEST_CASE("orbit states at t = 0") {
  const EllipticModulus k(0.6);
  const OrbitPoint a = orbit_state(OrbitFamily::inner(k), 0.0);
  CHECK(a.x1 == 0.0);
  CHECK(a.x2 == doctest::Approx(1.2));
  const OrbitPoint h = orbit_state(OrbitFamily::homoclinic(+1), 0.0);
  CHECK(h.x1 == 0.0);
  CHECK(h.x2 == doctest::Approx(2.0));
  const OrbitPoint r = orbit_state(OrbitFamily::rotating(k, -1), 0.0);
  CHECK(r.x2 == doctest::Approx(-2.0 / 0.6));
}

TEST_CASE("closed forms satisfy the pendulum ODE") {
  const std::vector<double> one{1.3};
  CHECK(orbit_ode_residual(OrbitFamily::inner(EllipticModulus(0.6)), one) <= 1e-8);

  const EllipticModulus k3(0.3);
  CHECK(orbit_ode_residual(OrbitFamily::inner(k3), linspace(0.0, 4 * k3.K(), 100)) <= 1e-7);
  const EllipticModulus k9(0.9);
  CHECK(orbit_ode_residual(OrbitFamily::rotating(k9, +1), linspace(0.0, 2 * 0.9 * k9.K(), 100)) <= 1e-7);
  CHECK(orbit_ode_residual(OrbitFamily::homoclinic(-1), linspace(-5.0, 5.0, 100)) <= 1e-7);
}

TEST_CASE("energy along orbits") {
  for (double kv : {0.2, 0.7, 0.99}) {
    const EllipticModulus k(kv);
    const OrbitFamily fams[3] = {OrbitFamily::inner(k), OrbitFamily::rotating(k, +1), OrbitFamily::rotating(k, -1)};
    for (const auto& f : fams) {
      CAPTURE(kv);
      const double target = f.tag() == Family::Inner ? 2 * kv * kv : 2 / (kv * kv);
      CHECK(f.energy() == doctest::Approx(target));
      for (double t : linspace(0.0, f.period(), 200)) {
        CHECK(std::abs(pendulum_energy(orbit_state(f, t)) - target) <= 1e-10);
      }
    }
  }
  const OrbitFamily h = OrbitFamily::homoclinic(+1);
  CHECK(std::isinf(h.period()));
  CHECK_THROWS_AS(h.modulus(), DomainError);
  for (double t : linspace(-10.0, 10.0, 101)) CHECK(std::abs(pendulum_energy(orbit_state(h, t)) - 2.0) <= 1e-10);
}

TEST_CASE("orbit angles stay in range and rotating angles unwrap") {
  const EllipticModulus k(0.95);
  const OrbitFamily in = OrbitFamily::inner(k);
  const OrbitFamily rot = OrbitFamily::rotating(k, +1);
  double prev = -1e9;
  for (double t : linspace(0.0, 3 * rot.period(), 600)) {
    CHECK(std::abs(orbit_state(in, t).x1) < kPi);
    const double x1 = orbit_state(rot, t).x1;
    CHECK(x1 > prev);
    prev = x1;
  }
  CHECK(orbit_state(rot, rot.period()).x1 == doctest::Approx(2 * kPi));
  CHECK(orbit_state(OrbitFamily::homoclinic(+1), 30.0).x1 == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(orbit_state(OrbitFamily::homoclinic(+1), -30.0).x1 == doctest::Approx(-kPi).epsilon(1e-12));
}

TEST_CASE("periods increase with k") {
  double prev_in = 0.0, prev_rot = 0.0;
  for (int i = 1; i < 100; ++i) {
    const EllipticModulus k(i / 100.0);
    const double tin = OrbitFamily::inner(k).period();
    const double trot = OrbitFamily::rotating(k, +1).period();
    CHECK(tin == doctest::Approx(4 * k.K()));
    CHECK(trot == doctest::Approx(2 * k.k() * k.K()));
    CHECK(tin > prev_in);
    CHECK(trot > prev_rot);
    prev_in = tin;
    prev_rot = trot;
  }
}

TEST_CASE("inner orbit half-period antisymmetry") {
  const EllipticModulus k(0.8);
  const OrbitFamily f = OrbitFamily::inner(k);
  for (double t : linspace(0.0, 4 * k.K(), 50)) {
    const OrbitPoint a = orbit_state(f, t);
    const OrbitPoint b = orbit_state(f, t + 2 * k.K());
    CHECK(std::abs(a.x1 + b.x1) <= 1e-10);
    CHECK(std::abs(a.x2 + b.x2) <= 1e-10);
  }
}

TEST_CASE("complex orbit state agrees with the real one on the axis") {
  const EllipticModulus k(0.7);
  for (const auto& f : {OrbitFamily::inner(k), OrbitFamily::rotating(k, -1), OrbitFamily::homoclinic(+1)}) {
    for (double t : {-0.9, 0.2, 1.4}) {
      const OrbitPoint r = orbit_state(f, t);
      const ComplexOrbitPoint c = orbit_state(f, cplx(t, 0.0));
      CHECK(std::abs(c.x2 - r.x2) <= 1e-12);
      CHECK(std::abs(c.sin_x1 - std::sin(r.x1)) <= 1e-12);
      CHECK(std::abs(c.sin_half_x1 - std::sin(0.5 * r.x1)) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(orbit_state(OrbitFamily::inner(k), cplx(0.0, k.K_prime())), PoleProximity);
}

TEST_CASE("distance to the separatrix") {
  CHECK(separatrix_distance({kPi, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(separatrix_distance({0.0, 2.0}) <= 1e-12);
  CHECK(separatrix_distance({0.0, 0.0}) > 1.0);
  const double rot9 = homoclinic_limit_distance(OrbitFamily::rotating(EllipticModulus(0.9), +1));
  const double rot99 = homoclinic_limit_distance(OrbitFamily::rotating(EllipticModulus(0.99), +1));
  const double rot999 = homoclinic_limit_distance(OrbitFamily::rotating(EllipticModulus(0.999), +1));
  CHECK(rot9 > rot99);
  CHECK(rot99 > rot999);
  const double in99 = homoclinic_limit_distance(OrbitFamily::inner(EllipticModulus(0.99)));
  const double in999 = homoclinic_limit_distance(OrbitFamily::inner(EllipticModulus(0.999)));
  CHECK(in999 <= in99);
  CHECK(homoclinic_limit_distance(OrbitFamily::inner(EllipticModulus(1e-3))) > 1.0);
}
