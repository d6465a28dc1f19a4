#pragma once

#include <utility>
#include <vector>

#include "msm/harmonic.hpp"

namespace msm {

// Multipole-vector representation of a real order-l harmonic tensor: l unit
// axes (each defined up to sign), a non-negative scale, and an overall sign.
// Canonical form fixes each axis to non-negative z (then x, then y) component
// and sorts the axes, making the representation unique up to the inherent
// sign-pair ambiguity.
struct Skeleton {
  std::vector<Vec3> axes;
  double scale = 1.0;
  int sign = 1;

  int order() const { return static_cast<int>(axes.size()); }
};

Skeleton canonicalized(Skeleton s);

// sign * scale * (order-l harmonic component of the symmetrized product of
// the axes).
HarmonicTensor skeleton_to_harmonic(const Skeleton& s);

// Electrostatic potential of the multipole in Maxwell's form:
// sign * scale * (-1)^l / l! * prod_i (u_i . grad) (1/r), evaluated through
// exact symbolic differentiation (polynomial numerator over an odd power of r).
double maxwell_potential(const Skeleton& s, const Vec3& r);

// Inverse of skeleton_to_harmonic for real harmonic tensors of order <= 12:
// roots of the tensor evaluated on the complex null curve, paired
// antipodally on the Riemann sphere and mapped back to real unit axes.
Skeleton sylvester_decompose(const HarmonicTensor& h);

// Max coefficient mismatch of the round trip, relative to max(1, |h|).
double sylvester_residual(const HarmonicTensor& h, const Skeleton& s);

// Sectorial harmonic of order l with frame (a, b): the complex tensor
// ((a + i b) e^(i phase))^(sym l), traceless by construction since
// (a + i b) . (a + i b) = 0; its axis is a x b.
HarmonicTensor sectorial(const Vec3& a, const Vec3& b, double phase, int order);
HarmonicTensor real_sectorial(const Vec3& a, const Vec3& b, double phase, int order);

// Cross term of the superposed-multipole electrostatic energy:
// (1/(l(l+1))) <A B> over the sphere. Requires equal orders l >= 1.
double interaction_energy(const HarmonicTensor& a, const HarmonicTensor& b);

struct GreatCircleSamples {
  std::vector<std::vector<Vec3>> circles;            // one ring per axis
  std::vector<std::pair<Vec3, double>> face_samples; // point, sign of skeleton value
};

// Sample points of the great circles on which the skeleton polynomial
// vanishes (equators of the axes), plus sign samples at the axis poles.
GreatCircleSamples great_circle_samples(const Skeleton& s, int count);

}  // namespace msm
