#pragma once

#include <vector>

#include "msm/rational.hpp"

namespace msm {

// Coefficient table of the Legendre polynomial P_l in the monomial basis:
// P_l(x) = sum_k coeffs[k] x^(l-2k), k = 0..floor(l/2).
struct LegendreCoeffs {
  int order = 0;
  std::vector<Rational> coeffs;
};

// Exact monomial coefficients of P_l, l <= 16.
// coeffs[k] = (-1)^k (2l-2k-1)!! / (2^k k! (l-2k)!).
LegendreCoeffs legendre_coeffs(int order);

// Expansion of x^n in Legendre polynomials: x^n = sum_k coeffs[k] P_{n-2k}(x),
// coeffs[k] = (2n-4k+1) n! / (2^k k! (2n-2k+1)!!), n <= 16.
std::vector<Rational> monomial_in_legendre(int degree);

// Expansion of (1+x)^n in Legendre polynomials: (1+x)^n = sum_l coeffs[l] P_l(x),
// coeffs[l] = 2^n (n!)^2 (2l+1) / ((n+l+1)! (n-l)!), n <= 16.
std::vector<Rational> binomial_in_legendre(int degree);

// P_l(x) evaluated through the exact coefficient table; x is clamped to
// [-1, 1] and accepted up to |x| <= 1 + 1e-12.
double eval_legendre(int order, double x);

}  // namespace msm
