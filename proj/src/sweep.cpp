#include "mlab/sweep.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>
#include <utility>

#include "mlab/errors.hpp"

namespace mlab {

namespace {

// Runs body(i) for i in [0, n); exceptions are rethrown after the loop, the
// first one in index order.
template <class Body>
void for_each_index(long n, Exec exec, int threads, Body&& body) {
  if (exec == Exec::Serial) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  const int nt = threads > 0 ? threads : resolve_threads();
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for num_threads(nt) schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

int resolve_threads(std::optional<int> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("MELNIKOV_LAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
      // ignored: fall through to hardware concurrency
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<double> theta_grid(int n) {
  if (n <= 0) throw DomainError("theta_grid: need at least one point");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = 2.0 * std::numbers::pi * i / n;
  return g;
}

std::vector<double> quadrature_sweep(const ForcedSystem& sys, const Resonance& r, std::span<const double> thetas,
                                     Exec exec, int threads) {
  std::vector<double> out(thetas.size());
  for_each_index(static_cast<long>(thetas.size()), exec, threads,
                 [&](long i) { out[i] = subharmonic_quadrature(sys, r, thetas[i]); });
  return out;
}

std::vector<double> homoclinic_sweep(const ForcedSystem& sys, int sign, std::span<const double> thetas,
                                     PhaseConvention phase, Exec exec, int threads) {
  std::vector<double> out(thetas.size());
  for_each_index(static_cast<long>(thetas.size()), exec, threads,
                 [&](long i) { out[i] = homoclinic_quadrature(sys, sign, thetas[i], phase); });
  return out;
}

std::vector<ContourKernels> contour_kernel_sweep(std::span<const Resonance> rs, double fraction, Exec exec,
                                                 int threads) {
  std::vector<ContourKernels> out(rs.size());
  for_each_index(static_cast<long>(rs.size()), exec, threads,
                 [&](long i) { out[i] = contour_kernels(rs[i], standard_contour(rs[i], fraction)); });
  return out;
}

std::vector<std::optional<Resonance>> resonance_table(Family family, double omega, int m_max, int n_max,
                                                      Exec exec, int threads) {
  std::vector<std::pair<int, int>> pairs;
  for (int m = 1; m <= m_max; ++m) {
    for (int n = 1; n <= n_max; ++n) {
      if (std::gcd(m, n) == 1) pairs.emplace_back(m, n);
    }
  }
  std::vector<std::optional<Resonance>> out(pairs.size());
  for_each_index(static_cast<long>(pairs.size()), exec, threads, [&](long i) {
    out[i] = solve_resonance(family, omega, pairs[i].first, pairs[i].second);
  });
  return out;
}

}  // namespace mlab
