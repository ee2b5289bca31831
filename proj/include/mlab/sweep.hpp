#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mlab/contour.hpp"
#include "mlab/exec.hpp"
#include "mlab/melnikov.hpp"

namespace mlab {

/// --threads flag if given, else MELNIKOV_LAB_THREADS, else hardware
/// concurrency (at least 1).
int resolve_threads(std::optional<int> flag = std::nullopt);

/// n uniform points on [0, 2 pi).
std::vector<double> theta_grid(int n);

std::vector<double> quadrature_sweep(const ForcedSystem& sys, const Resonance& r, std::span<const double> thetas,
                                     Exec exec = Exec::Parallel, int threads = 0);

std::vector<double> homoclinic_sweep(const ForcedSystem& sys, int sign, std::span<const double> thetas,
                                     PhaseConvention phase = PhaseConvention::OmegaT,
                                     Exec exec = Exec::Parallel, int threads = 0);

/// Contour kernels on the standard circle (radius fraction of the
/// admissible bound) for each resonance.
std::vector<ContourKernels> contour_kernel_sweep(std::span<const Resonance> rs, double fraction,
                                                 Exec exec = Exec::Parallel, int threads = 0);

/// solve_resonance for every coprime (m, n) with m <= m_max, n <= n_max,
/// in row-major (m, n) order.
std::vector<std::optional<Resonance>> resonance_table(Family family, double omega, int m_max, int n_max,
                                                      Exec exec = Exec::Parallel, int threads = 0);

}  // namespace mlab
