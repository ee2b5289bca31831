#pragma once

#include <complex>

namespace mlab {

using cplx = std::complex<double>;

/// Complete elliptic integral of the first kind, K(k), by the
/// arithmetic-geometric mean. Domain 0 <= k < 1.
double complete_K(double k);

/// Complete elliptic integral of the second kind, E(k). Domain 0 <= k <= 1.
double complete_E(double k);

/// Elliptic modulus k in (0,1) together with its complement k' and the
/// complete integrals K(k), E(k), K(k'), E(k').
///
/// k and k' are held as an independent pair: near k = 1 the complement
/// cannot be recovered from k in double precision, so constructors that
/// start from k' (or from u = -ln k') keep it exact.
class EllipticModulus {
 public:
  explicit EllipticModulus(double k);

  static EllipticModulus from_complement(double k_prime);
  /// k' = exp(-u), k = sqrt(-expm1(-2u)); u > 0.
  static EllipticModulus from_log_complement(double u);

  double k() const { return k_; }
  double k_prime() const { return kc_; }
  double K() const { return K_; }
  double E() const { return E_; }
  double K_prime() const { return Kc_; }
  double E_prime() const { return Ec_; }

  /// The modulus with k and k' exchanged. Used for the imaginary-axis
  /// factor of the complex Jacobi functions; may hold k' = 1 exactly when
  /// k underflows relative to one.
  EllipticModulus complement() const;

 private:
  EllipticModulus(double k, double kc, bool checked);

  double k_ = 0.0;
  double kc_ = 1.0;
  double K_ = 0.0;
  double E_ = 0.0;
  double Kc_ = 0.0;
  double Ec_ = 0.0;
};

template <class T>
struct JacobiValues {
  T sn;
  T cn;
  T dn;
};

using JacobiReal = JacobiValues<double>;
using JacobiTriple = JacobiValues<cplx>;

/// sn, cn, dn for real argument (descending Landen / AGM phase recursion
/// after reduction modulo 4K).
JacobiReal jacobi_real(double t, const EllipticModulus& m);

/// Jacobi amplitude am(t), continuous and unwrapped: am(t + 4K) = am(t) + 2*pi.
double jacobi_amplitude(double t, const EllipticModulus& m);

/// Distance from t to the nearest pole iK' (mod 2K, 2iK').
double pole_lattice_distance(cplx t, const EllipticModulus& m);

/// Minimum clearance required by jacobi_complex.
inline constexpr double kPoleClearance = 1e-9;

/// sn, cn, dn for complex argument via the imaginary addition theorem.
/// Throws PoleProximity within kPoleClearance of the pole lattice.
JacobiTriple jacobi_complex(cplx t, const EllipticModulus& m);

}  // namespace mlab
