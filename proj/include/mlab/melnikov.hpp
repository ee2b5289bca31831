#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mlab/elliptic.hpp"
#include "mlab/pendulum.hpp"

namespace mlab {

/// A resonant unperturbed orbit: n periods of the orbit span m forcing
/// periods, n * T(k) = 2 pi m / omega, with gcd(m, n) = 1.
struct Resonance {
  int m;
  int n;
  Family family;  // Inner, RotatingPlus or RotatingMinus
  EllipticModulus modulus;
  double omega;

  OrbitFamily orbit() const { return OrbitFamily::make(family, modulus); }
  /// 2 pi m / omega.
  double mapping_time() const;
};

/// Solves K(k) = pi m / (2 n omega) (Inner) or k K(k) = pi m / (n omega)
/// (Rotating) by bisection in u = -ln k'. Returns nullopt when no k in (0,1)
/// exists (Inner needs m/n > omega) or it is not representable.
/// Throws DomainError for omega <= 0, non-coprime or non-positive (m, n),
/// or a homoclinic family.
std::optional<Resonance> solve_resonance(Family family, double omega, int m, int n);

/// |pi m / (2 n K) - omega| or |pi m / (n k K) - omega|.
double resonance_omega_residual(const Resonance& r);

enum class Provenance { Quadrature, ClosedForm };

/// theta -> const_term + cos_coeff * cos(theta).
struct MelnikovCurve {
  double const_term = 0.0;
  double cos_coeff = 0.0;
  Provenance provenance = Provenance::ClosedForm;

  double operator()(double theta) const;
};

/// Multiplier used in the damping coefficients J1 = 16 c (E - k'^2 K) and
/// J1~ = 8 c E / k. The quadrature agrees with c = n.
enum class J1Argument { N, M };

/// Forcing phase along the homoclinic orbit: omega t + theta (default) or
/// t + theta.
enum class PhaseConvention { OmegaT, T };

struct QuadratureOptions {
  double rel_tol = 1e-10;
  int max_nodes = 1 << 20;
};

/// int_0^{2 pi m / omega} DH(x(t)) . g(x(t), omega t + theta) dt by the
/// periodic trapezoid rule with node doubling. Throws NonConvergence.
double subharmonic_quadrature(const ForcedSystem& sys, const Resonance& r, double theta,
                              const QuadratureOptions& opt = {});

/// int_R DH(x_h(t)) . g(x_h(t), phase(t)) dt, truncated where the sech tail
/// falls below 1e-13.
double homoclinic_quadrature(const ForcedSystem& sys, int sign, double theta,
                             PhaseConvention phase = PhaseConvention::OmegaT,
                             const QuadratureOptions& opt = {});

MelnikovCurve closed_form_subharmonic(const Resonance& r, double beta, double delta,
                                      J1Argument arg = J1Argument::N);

/// -8 delta +- 2 pi beta sech(pi omega / 2) cos(theta).
MelnikovCurve closed_form_homoclinic(int sign, double beta, double delta, double omega);

/// Projects quadrature values at theta = 0 and pi onto the cosine form.
MelnikovCurve quadrature_curve(const ForcedSystem& sys, const Resonance& r,
                               const QuadratureOptions& opt = {});

struct CurveZero {
  double theta;
  double slope;
  bool simple;
};

struct ZeroSet {
  std::vector<CurveZero> zeros;
  bool tangency = false;        // zero exists but is not simple
  bool identically_zero = false;
};

inline constexpr double kTangencyTol = 1e-12;

/// Zeros of the cosine-form curve in [0, 2 pi).
ZeroSet simple_zeros(const MelnikovCurve& curve);

struct ChaosVerdict {
  bool holds;
  /// (beta/delta) / ((4/pi) cosh(pi omega / 2)); +inf when delta = 0 < beta.
  double ratio;
};

double chaos_threshold(double omega);
ChaosVerdict chaos_condition(double beta, double delta, double omega);

/// All coprime (m, n), m <= m_max, n <= n_max, whose resonant modulus lies
/// in (k_lo, k_hi), sorted by k. Requires 0 <= k_lo < k_hi <= 1.
std::vector<Resonance> enumerate_resonances(Family family, double omega, double k_lo, double k_hi,
                                            int m_max, int n_max);

/// The homoclinic curve the m/1 subharmonic curves converge to as m grows:
/// M_+(theta) + M_-(theta + m pi) for Inner, M_+- for Rotating+-.
double homoclinic_limit_value(Family family, int m, double beta, double delta, double omega,
                              double theta);

/// Subharmonic m/1 curve minus homoclinic_limit_value, in cosine form.
/// Evaluated by expansions in k' so gaps far below the curve magnitudes
/// (k' ~ 1e-15 at m = 11) keep full relative accuracy.
MelnikovCurve limit_difference(const Resonance& r, double beta, double delta);

/// For each m: sup over thetas of |M^{m/1}(theta) - limit(theta)|, both in
/// closed form.
std::vector<double> homoclinic_limit_check(Family family, double omega, double beta, double delta,
                                           std::span<const int> m_list,
                                           std::span<const double> thetas);

}  // namespace mlab
