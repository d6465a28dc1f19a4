#pragma once

#include <complex>
#include <vector>

#include "msm/harmonic.hpp"

namespace msm {

// Pure state of a spin of magnitude J (stored as two_j = 2J), with complex
// amplitudes on the |J, m> basis ordered m = J, J-1, ..., -J.
class SpinState {
 public:
  SpinState(int two_j, std::vector<std::complex<double>> amplitudes, bool renormalize = true);

  int two_j() const { return two_j_; }
  int dim() const { return two_j_ + 1; }
  // Index 0 holds m = J; index i holds m = J - i.
  const std::complex<double>& amp(int index) const { return amps_[index]; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  double norm() const;

 private:
  int two_j_;
  std::vector<std::complex<double>> amps_;
};

// Conjugate-linear in the first argument: sum_m conj(a_m) b_m.
std::complex<double> inner_product(const SpinState& a, const SpinState& b);

struct Constellation {
  int two_j = 0;
  std::vector<Vec3> stars;  // 2J unit vectors, multiset
};

// Maximal-projection eigenstate of J.n: amplitudes
// sqrt(C(2J, J+m)) cos^(J+m)(theta/2) sin^(J-m)(theta/2) e^(i(J-m)phi)
// (relative phase e^(-i m phi); the global phase per state is fixed so the
// overlap of two coherent states carries exactly the spherical-triangle
// phase).
SpinState coherent_state(int two_j, const Vec3& n);

// Oriented area of the spherical triangle (a, b, c) in (-2*pi, 2*pi]:
// 2 * arg(1 + a.b + b.c + c.a + i a.(b x c)).
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

// ((1 + n.n')/2)^J e^(i J Sigma(z, n, n')); equals the amplitude inner
// product of the two coherent states. Antipodal pairs return 0.
std::complex<double> overlap_geometric(int two_j, const Vec3& n1, const Vec3& n2);

// Coherent-state wave function <n|psi>.
std::complex<double> coherent_amplitude(const SpinState& psi, const Vec3& n);

// Husimi function |<n|psi>|^2.
double husimi(const SpinState& psi, const Vec3& n);

// The 2J antipodes of the zeros of <n|psi>: roots of the stereographic
// polynomial sum_i a_i sqrt(C(2J, i)) zeta^i, mapped to the sphere; roots at
// infinity (degree deficiency) contribute stars at +z.
Constellation majorana_stars(const SpinState& psi);

// Normalized state with the given constellation (inverse of majorana_stars,
// up to global phase).
SpinState state_from_stars(const Constellation& c);

// Harmonic components of the Husimi function for l = 0..2J (the Husimi
// function is band-limited to degree 2J).
std::vector<HarmonicTensor> husimi_harmonic_components(const SpinState& psi,
                                                       Exec exec = default_exec());

}  // namespace msm
