#pragma once

#include <complex>
#include <span>
#include <vector>

namespace msm {

// All roots of a complex polynomial with coefficients in ascending power
// order (coeffs[k] multiplies z^k). The leading coefficient must be nonzero.
// Aberth-Ehrlich simultaneous iteration, Newton-polished, with a
// companion-matrix eigenvalue fallback if the iteration stalls.
std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs);

struct TrimmedRoots {
  std::vector<std::complex<double>> finite;
  int at_infinity = 0;  // degree deficiency relative to the expected degree
};

// Roots of a polynomial of nominal degree `expected_degree` whose leading
// coefficients may vanish: each vanishing leading coefficient (relative to
// the largest coefficient magnitude) counts as a root at infinity.
TrimmedRoots roots_with_infinity(std::span<const std::complex<double>> coeffs,
                                 int expected_degree, double rel_tol = 1e-12);

}  // namespace msm
