#pragma once

#include <Eigen/Dense>

#include "msm/spinstate.hpp"
#include "msm/symtensor.hpp"

namespace msm {

// Dense complex matrix on the |J, m> basis, rows/columns ordered m = J..-J
// (matching SpinState amplitude order).
using SpinMatrix = Eigen::MatrixXcd;

struct AngularMomentum {
  SpinMatrix jx, jy, jz;
};

// Ladder-built angular momentum matrices: [Jx, Jy] = i Jz and
// Jx^2 + Jy^2 + Jz^2 = J(J+1) I.
AngularMomentum angular_momentum_matrices(int two_j);

// Quantization of a real polynomial in the angular momentum components: each
// monomial maps to the average of the matrix products over all distinct
// orderings of its factors (multiset-permutation recursion with memoization).
// Hermitian by construction; rank capped at 8.
SpinMatrix quantize_symmetrized(const SymTensor& poly, int two_j);

// <psi| M |psi> for Hermitian M (validated to 1e-10).
double expectation_value(const SpinState& psi, const SpinMatrix& m);

// Max entry deviation of (2J+1)/4pi * integral |n><n| from the identity,
// assembled by sphere quadrature exact through polynomial degree band_limit.
// An insufficient band limit shows up as a reported deviation.
double resolution_of_unity_deviation(int two_j, int band_limit, Exec exec = default_exec());

// exp(-i angle (J . axis)) via scaled squaring with a Taylor kernel.
SpinMatrix rotation_operator(int two_j, const Vec3& axis, double angle);

// Matrix action on a state; does not renormalize.
SpinState apply_operator(const SpinMatrix& m, const SpinState& psi);

}  // namespace msm
