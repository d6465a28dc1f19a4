#pragma once

#include <functional>
#include <span>
#include <vector>

#include "msm/quadrature.hpp"
#include "msm/symtensor.hpp"

namespace msm {

// Max |coeff| of the single trace, relative to max(1, |A|_max). Zero for rank < 2.
double trace_deviation(const SymTensor& a);

// Traceless symmetric tensor of order l; equivalently a regular solid
// harmonic of degree l, a spherical harmonic on the unit sphere, or (after
// Kelvin inversion) the potential of a 2^l-pole.
class HarmonicTensor {
 public:
  HarmonicTensor() = default;
  explicit HarmonicTensor(SymTensor base, double tol = 1e-12);
  static HarmonicTensor unchecked(SymTensor base);

  int order() const { return base_.rank(); }
  const SymTensor& base() const { return base_; }

 private:
  SymTensor base_;
};

// Canonical decomposition: components of orders n, n-2, ... such that
// A = sum_k components[k] (.) delta^k. Every component is traceless.
std::vector<HarmonicTensor> harmonic_components(const SymTensor& a);

// Inverse of harmonic_components: ranks must descend by 2.
SymTensor reconstruct(std::span<const HarmonicTensor> components);

// The three mutually consistent evaluations of a harmonic tensor:
// regular = r^l * spherical = r^(2l+1) * irregular.
std::complex<double> eval_spherical(const HarmonicTensor& h, const Vec3& n);
std::complex<double> eval_regular(const HarmonicTensor& h, const Vec3& r);
std::complex<double> eval_irregular(const HarmonicTensor& h, const Vec3& r);

// (1/4pi) * integral of prod_i (a_i . n) over the unit sphere, evaluated by
// the pairing sum: zero for odd counts, else the average over all (2m-1)!!
// pairings of the product of pair dot products, divided by (2m+1).
double sphere_average_product(std::span<const Vec3> vectors);

// Exact value of (1/4pi) * integral of nx^(2p) ny^(2q) nz^(2r).
Rational monomial_sphere_integral(int p, int q, int r);

// (1/4pi) * integral of A(n) B(n) over the sphere for equal-order harmonic
// tensors, computed as (n! / (2n+1)!!) times the full contraction.
std::complex<double> harmonic_inner_product(const HarmonicTensor& a, const HarmonicTensor& b);

// Full contraction of the order-n harmonic parts of two rank-n tensors,
// expressed through the contractions of their p-fold traces (no explicit
// component extraction).
std::complex<double> harmonic_contraction_via_traces(const SymTensor& a, const SymTensor& b);

// Order-l harmonic component of a sampled spherical function, via quadrature
// exact for band-limited f (polynomial in n of total degree <= band_limit).
HarmonicTensor project_spherical_function(const std::function<double(const Vec3&)>& f, int order,
                                          int band_limit, Exec exec = default_exec());

}  // namespace msm
