#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "mlab/elliptic.hpp"

namespace mlab {

using State = std::array<double, 2>;
using Matrix2 = std::array<State, 2>;

/// A time-periodically forced planar Hamiltonian system
///   x' = J DH(x) + eps * g(x, phase),  phase' = omega.
class ForcedSystem {
 public:
  virtual ~ForcedSystem() = default;

  virtual double hamiltonian(const State& x) const = 0;
  virtual State grad_hamiltonian(const State& x) const = 0;
  virtual State perturbation(const State& x, double phase) const = 0;
  virtual double omega() const = 0;

  /// J DH(x) = (dH/dx2, -dH/dx1).
  State hamiltonian_field(const State& x) const;
  State vector_field(const State& x, double phase, double eps) const;
  /// Jacobian of vector_field in x. Centered differences unless overridden.
  virtual Matrix2 field_jacobian(const State& x, double phase, double eps) const;
};

/// x1' = x2, x2' = -sin x1 + eps (beta cos(phase) - delta x2).
class ForcedPendulum final : public ForcedSystem {
 public:
  ForcedPendulum(double beta, double delta, double omega);

  double hamiltonian(const State& x) const override;
  State grad_hamiltonian(const State& x) const override;
  State perturbation(const State& x, double phase) const override;
  double omega() const override { return omega_; }
  Matrix2 field_jacobian(const State& x, double phase, double eps) const override;

  double beta() const { return beta_; }
  double delta() const { return delta_; }

 private:
  double beta_;
  double delta_;
  double omega_;
};

enum class Family { Inner, RotatingPlus, RotatingMinus, HomoclinicPlus, HomoclinicMinus };

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view s);
bool is_homoclinic(Family f);
bool is_rotating(Family f);
/// +1 for Inner and the "+" branches, -1 for the "-" branches.
int family_sign(Family f);

struct OrbitPoint {
  double x1;
  double x2;
};

/// Closed-form quantities of an orbit at complex time. The angle itself is
/// never formed (arcsin is multivalued off the real axis).
struct ComplexOrbitPoint {
  cplx sin_half_x1;
  cplx sin_x1;
  cplx x2;
};

/// One of the unperturbed pendulum orbits:
///   Inner        (2 arcsin(k sn t), 2k cn t),                period 4K(k)
///   Rotating+-   (+-2 am(t/k), +-(2/k) dn(t/k)),             period 2kK(k)
///   Homoclinic+- (+-2 arcsin(tanh t), +-2 sech t)
class OrbitFamily {
 public:
  static OrbitFamily inner(const EllipticModulus& k);
  static OrbitFamily rotating(const EllipticModulus& k, int sign);
  static OrbitFamily homoclinic(int sign);
  /// Any tag; the modulus is required for Inner/Rotating and ignored otherwise.
  static OrbitFamily make(Family tag, std::optional<EllipticModulus> k);

  Family tag() const { return tag_; }
  bool has_modulus() const { return modulus_.has_value(); }
  /// Throws DomainError for homoclinic tags.
  const EllipticModulus& modulus() const;
  /// +infinity for homoclinic tags.
  double period() const;
  /// Value of H = 1 - cos x1 + x2^2/2 on the orbit.
  double energy() const;

 private:
  OrbitFamily(Family tag, std::optional<EllipticModulus> k) : tag_(tag), modulus_(k) {}

  Family tag_;
  std::optional<EllipticModulus> modulus_;
};

/// Real-time state. x1 lies in (-pi, pi) for Inner/homoclinic orbits and is
/// unwrapped (monotone) for rotating orbits.
OrbitPoint orbit_state(const OrbitFamily& f, double t);
ComplexOrbitPoint orbit_state(const OrbitFamily& f, cplx t);

double pendulum_energy(const OrbitPoint& p);

/// max over t_grid of |d/dt x(t) - (x2, -sin x1)|, derivative by the
/// five-point centered difference with the given step.
double orbit_ode_residual(const OrbitFamily& f, std::span<const double> t_grid, double step = 1e-3);

/// Distance from p to the separatrix set (both homoclinic branches and the
/// saddle), with x1 taken on the circle.
double separatrix_distance(const OrbitPoint& p);

/// sup over one period (sampled) of separatrix_distance along the orbit.
double homoclinic_limit_distance(const OrbitFamily& f, int samples = 2000);

}  // namespace mlab
