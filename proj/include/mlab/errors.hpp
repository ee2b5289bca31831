#pragma once

#include <stdexcept>
#include <string>

namespace mlab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A complex argument came within the pole-clearance threshold of the
/// Jacobi pole lattice.
class PoleProximity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical procedure exhausted its budget.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ODE integrator could not make progress (step-size collapse).
class IntegrationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A contour does not enclose exactly one pole of the integrand.
class SingleEnclosureViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mlab
