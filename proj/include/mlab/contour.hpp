#pragma once

#include <span>
#include <vector>

#include "mlab/melnikov.hpp"

namespace mlab {

/// Circle in the complex t-plane. For the standard contour the center is
/// the pole of the orbit (iK', or ikK' for rotating orbits) shifted by half
/// an orbit period, and the integrand is evaluated at t - T/2.
struct ContourSpec {
  cplx center;
  double radius = 0.0;
  int nodes = 64;
  double theta = 0.0;
};

struct ContourValue {
  cplx value;
  double theta;
  Family family;
};

/// Per-resonance kernel integrals around the contour, in the shifted
/// variable s = t - T/2:
///   damping = oint x2(s)^2 ds, cos = oint x2(s) cos(omega s) ds,
///   sin = oint x2(s) sin(omega s) ds.
/// The integral of DH . g is beta (cos cos(theta) - sin sin(theta)) - delta damping.
struct ContourKernels {
  cplx damping;
  cplx cos_kernel;
  cplx sin_kernel;
  int nodes = 0;
};

/// Pole of the unshifted orbit closest to the real axis: iK' or ikK'.
cplx orbit_pole(const Resonance& r);
/// orbit_pole + T/2.
cplx contour_center(const Resonance& r);
/// Half the distance from the pole to its nearest neighbour in the pole
/// lattice; admissible radii are strictly below this.
double admissible_radius(const Resonance& r);
/// Circle about contour_center with radius fraction * admissible_radius.
ContourSpec standard_contour(const Resonance& r, double fraction, double theta = 0.0);

/// Throws SingleEnclosureViolation when the circle does not enclose exactly
/// one pole with radius below half the distance to the next one, or crosses
/// Re t = 0 or Re t = 2 pi m / omega; PoleProximity when it passes within
/// the pole clearance.
void validate_contour(const Resonance& r, const ContourSpec& spec);

ContourKernels contour_kernels(const Resonance& r, const ContourSpec& spec, double rel_tol = 1e-9);
ContourValue synthesize(const ContourKernels& kern, const Resonance& r, double theta, double beta,
                        double delta);

ContourValue contour_integral_numeric(const Resonance& r, const ContourSpec& spec, double beta,
                                      double delta);

/// 4 pi beta (cosh(omega K') cos(theta) - i sinh(omega K') sin(theta)) for
/// Inner; +-4 pi beta (cosh(omega k K') cos(theta) - i sinh(omega k K') sin(theta))
/// for Rotating+-.
ContourValue contour_integral_closed(const Resonance& r, double theta, double beta);

enum class LaurentFunction { Cn, Dn, DnScaled, CnSquared, CosOmega, SinOmega, CosCn, SinCn };

struct LaurentSample {
  double radius;
  cplx residue;
  cplx constant;
};

struct LaurentProbe {
  std::vector<LaurentSample> samples;
  cplx residue;    // smallest-radius estimate
  cplx constant;
  double spread;   // max pairwise disagreement across radii
};

/// Centre of the probe: ikK' for DnScaled, iK' otherwise.
cplx laurent_center(LaurentFunction fn, const Resonance& r);

/// Residue and constant Laurent coefficient at laurent_center from the
/// contour moments (1/2 pi i) oint f dt and (1/2 pi i) oint f/(t - c) dt.
LaurentProbe laurent_probe(LaurentFunction fn, const Resonance& r, std::span<const double> radii);

/// |int_a^b cn^2 t dt + int_{1/sn a}^{1/sn b} s^-2 sqrt((1-s^2)/(k^2-s^2)) ds|.
/// Requires 0 < a <= b <= K(k).
double substitution_check(const EllipticModulus& k, double a, double b);

}  // namespace mlab
