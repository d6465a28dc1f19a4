#pragma once

#include <complex>
#include <span>
#include <vector>

#include "msm/geometry.hpp"
#include "msm/rational.hpp"

namespace msm {

// Exponents of the monomial x^p y^q z^s; p + q + s equals the tensor rank.
struct MultiIndex {
  int p = 0, q = 0, s = 0;
  int degree() const { return p + q + s; }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

enum class ScalarKind { real, complex };

// Fully symmetric rank-n tensor over R^3, stored as the coefficients of the
// associated homogeneous polynomial A(r) = sum c_pqs x^p y^q z^s.
//
// Coefficients are kept in canonical order: (p, q, s) descending
// lexicographically, i.e. slot (n-p)(n-p+1)/2 + (n-p-q). The Cartesian entry
// for an index multiset with occupation (p, q, s) is c_pqs / multinomial(n; p, q, s).
// Real and complex tensors share the representation under a kind tag; real
// tensors keep exactly zero imaginary parts, and mixed operations promote to
// complex.
class SymTensor {
 public:
  SymTensor() : SymTensor(0, ScalarKind::real) {}
  SymTensor(int rank, ScalarKind kind);

  static int coeff_count(int rank) { return (rank + 1) * (rank + 2) / 2; }
  static int slot(int rank, int p, int q);
  static MultiIndex index_at(int rank, int slot);

  int rank() const { return rank_; }
  ScalarKind kind() const { return kind_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  std::complex<double>& operator[](int slot) { return coeffs_[slot]; }
  const std::complex<double>& operator[](int slot) const { return coeffs_[slot]; }
  std::complex<double> coeff(int p, int q, int s) const;
  void set_coeff(int p, int q, int s, std::complex<double> value);

  std::span<const std::complex<double>> coeffs() const { return coeffs_; }

  // Cartesian tensor entry for an index multiset containing p x's, q y's, s z's.
  std::complex<double> cartesian_entry(int p, int q, int s) const;

  double max_abs_coeff() const;
  bool is_zero(double tol = 0.0) const { return max_abs_coeff() <= tol; }

  // Drops the complex tag; requires imaginary parts below tol * max coeff.
  SymTensor real_part() const;
  SymTensor& promote_to_complex();

  SymTensor& operator*=(double s);
  SymTensor& operator*=(std::complex<double> s);
  SymTensor& operator+=(const SymTensor& o);
  SymTensor& operator-=(const SymTensor& o);
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(double s, SymTensor a) { return a *= s; }
  friend SymTensor operator*(std::complex<double> s, SymTensor a) { return a *= s; }

 private:
  int rank_;
  ScalarKind kind_;
  std::vector<std::complex<double>> coeffs_;
};

// Symmetrized power of the metric tensor: rank-2k tensor with polynomial
// (x^2 + y^2 + z^2)^k. delta_power(1) is the Kronecker delta.
SymTensor delta_power(int k);

// Symmetrized product of n vectors: polynomial prod_i (v_i . r). The inputs
// are sorted componentwise first so the result is bit-identical under input
// permutation.
SymTensor from_vectors(std::span<const Vec3> vectors);
SymTensor from_vectors(std::span<const CVec3> vectors);
SymTensor from_vectors(std::initializer_list<Vec3> vectors);

// Fully symmetrized tensor product: the polynomial product.
SymTensor sym_product(const SymTensor& a, const SymTensor& b);

// p-fold trace: rank n-2p tensor equal to ((n-2p)!/n!) Laplacian^p A, with the
// Laplacian applied exactly (integer coefficient maps) and the rational scale
// converted to double once at the end.
SymTensor trace(const SymTensor& a, int folds);

// Laplacian of the polynomial, as a rank n-2 tensor polynomial (unscaled).
SymTensor laplacian(const SymTensor& a);

// p-fold contraction of two symmetric tensors, symmetrized, rank n+m-2p.
SymTensor contract(const SymTensor& a, const SymTensor& b, int pairs);

// Full contraction (pairs = min rank) as a scalar when the ranks are equal.
std::complex<double> full_contraction_scalar(const SymTensor& a, const SymTensor& b);

// Multilinear value A(v_1, ..., v_n) = (1/n!) prod (v_k . grad) A(r).
std::complex<double> apply_polarization(const SymTensor& a, std::span<const Vec3> vectors);
std::complex<double> apply_polarization(const SymTensor& a, std::span<const CVec3> vectors);

// Homogeneous polynomial value A(r).
std::complex<double> evaluate(const SymTensor& a, const Vec3& r);
std::complex<double> evaluate(const SymTensor& a, const CVec3& r);

// Directional derivative (v . grad) A as a rank n-1 tensor polynomial.
SymTensor directional_derivative(const SymTensor& a, const CVec3& v);

// Polynomial product with (x^2+y^2+z^2)^k (exact coefficient gather).
SymTensor multiply_by_r2_power(const SymTensor& a, int k);

double max_abs_difference(const SymTensor& a, const SymTensor& b);

}  // namespace msm
