#include <doctest.h>

#include <cstdlib>
#include <numbers>
#include <numeric>
#include <vector>

#include "mlab/errors.hpp"
#include "mlab/poincare.hpp"
#include "mlab/sweep.hpp"

using namespace mlab;

TEST_CASE("thread count resolution") {
  CHECK(resolve_threads(3) == 3);
  setenv("MELNIKOV_LAB_THREADS", "5", 1);
  CHECK(resolve_threads() == 5);
  CHECK(resolve_threads(2) == 2);
  setenv("MELNIKOV_LAB_THREADS", "junk", 1);
  CHECK(resolve_threads() >= 1);
  unsetenv("MELNIKOV_LAB_THREADS");
  CHECK(resolve_threads() >= 1);
}

TEST_CASE("theta grid") {
  const auto g = theta_grid(64);
  REQUIRE(g.size() == 64);
  CHECK(g[0] == 0.0);
  CHECK(g[63] < 2 * std::numbers::pi);
  CHECK_THROWS_AS(theta_grid(0), DomainError);
}

TEST_CASE("parallel sweeps are bit-identical to the serial reference") {
  const ForcedPendulum sys(0.9, 0.4, 1.0);
  const auto thetas = theta_grid(48);
  const Resonance r = *solve_resonance(Family::Inner, 1.0, 5, 2);
  for (int threads : {1, 2, 4, 7}) {
    CAPTURE(threads);
    CHECK(quadrature_sweep(sys, r, thetas, Exec::Serial) == quadrature_sweep(sys, r, thetas, Exec::Parallel, threads));
    CHECK(homoclinic_sweep(sys, -1, thetas, PhaseConvention::OmegaT, Exec::Serial) ==
          homoclinic_sweep(sys, -1, thetas, PhaseConvention::OmegaT, Exec::Parallel, threads));

    const auto a = resonance_table(Family::RotatingPlus, 1.0, 9, 6, Exec::Serial);
    const auto b = resonance_table(Family::RotatingPlus, 1.0, 9, 6, Exec::Parallel, threads);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE(a[i].has_value() == b[i].has_value());
      if (a[i]) CHECK(a[i]->modulus.k_prime() == b[i]->modulus.k_prime());
    }

    std::vector<Resonance> rs;
    for (int m = 2; m <= 6; ++m) rs.push_back(*solve_resonance(Family::Inner, 1.0, m, 1));
    const auto ka = contour_kernel_sweep(rs, 0.1, Exec::Serial);
    const auto kb = contour_kernel_sweep(rs, 0.1, Exec::Parallel, threads);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      CHECK(ka[i].cos_kernel == kb[i].cos_kernel);
      CHECK(ka[i].sin_kernel == kb[i].sin_kernel);
      CHECK(ka[i].damping == kb[i].damping);
    }
  }
}

TEST_CASE("resonance table layout") {
  const auto t = resonance_table(Family::Inner, 1.0, 4, 3, Exec::Parallel, 2);
  // Coprime pairs with m <= 4, n <= 3 in row-major order.
  std::vector<std::pair<int, int>> expect;
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 3; ++n)
      if (std::gcd(m, n) == 1) expect.emplace_back(m, n);
  REQUIRE(t.size() == expect.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(t[i].has_value() == (expect[i].first > expect[i].second));
    if (t[i]) {
      CHECK(t[i]->m == expect[i].first);
      CHECK(t[i]->n == expect[i].second);
    }
  }
}

TEST_CASE("sweep errors surface in index order") {
  const ForcedPendulum sys(1.0, 0.0, 2.0);
  const Resonance r = *solve_resonance(Family::Inner, 1.0, 3, 1);
  const auto thetas = theta_grid(8);
  CHECK_THROWS_AS(quadrature_sweep(sys, r, thetas, Exec::Parallel, 3), DomainError);
}

TEST_CASE("Newton seeds and tangle fan match their serial reference") {
  const Resonance r = *solve_resonance(Family::Inner, 1.0, 3, 1);
  const ForcedPendulum sys(1.0, 0.0, 1.0);
  SubharmonicOptions serial;
  serial.exec = Exec::Serial;
  SubharmonicOptions parallel;
  parallel.threads = 4;
  const FixedPointResult a = find_subharmonic(sys, 1e-3, r, std::numbers::pi / 2, serial);
  const FixedPointResult b = find_subharmonic(sys, 1e-3, r, std::numbers::pi / 2, parallel);
  CHECK(a.point.x1 == b.point.x1);
  CHECK(a.point.x2 == b.point.x2);
  CHECK(a.residual == b.residual);
  CHECK(a.iterations == b.iterations);

  const ForcedPendulum forced(10.0, 1.0, 1.0);
  const TangleStats ts = homoclinic_tangle_probe(forced, 0.01, 30.0, 12, {}, Exec::Serial);
  const TangleStats tp = homoclinic_tangle_probe(forced, 0.01, 30.0, 12, {}, Exec::Parallel);
  CHECK(ts.exponents == tp.exponents);
  CHECK(ts.max_final_energy == tp.max_final_energy);
}
