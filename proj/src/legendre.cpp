#include "msm/legendre.hpp"

#include <cmath>
#include <stdexcept>

#include "msm/config.hpp"

namespace msm {

namespace {

void check_order(int n, const char* what) {
  if (n < 0 || n > kMaxRank)
    throw RankCapError(std::string(what) + ": order must be in [0, 16], got " + std::to_string(n));
}

}  // namespace

LegendreCoeffs legendre_coeffs(int order) {
  check_order(order, "legendre_coeffs");
  LegendreCoeffs table;
  table.order = order;
  table.coeffs.reserve(order / 2 + 1);
  for (int k = 0; k <= order / 2; ++k) {
    Rational c(double_factorial(2 * order - 2 * k - 1),
               int_pow2(k) * factorial(k) * factorial(order - 2 * k));
    if (k % 2 == 1) c = -c;
    table.coeffs.push_back(c);
  }
  return table;
}

std::vector<Rational> monomial_in_legendre(int degree) {
  check_order(degree, "monomial_in_legendre");
  std::vector<Rational> coeffs;
  coeffs.reserve(degree / 2 + 1);
  for (int k = 0; k <= degree / 2; ++k) {
    Rational c(2 * degree - 4 * k + 1, int_pow2(k) * factorial(k));
    c *= factorial_ratio(degree, 0);
    c /= Rational(double_factorial(2 * degree - 2 * k + 1));
    coeffs.push_back(c);
  }
  return coeffs;
}

std::vector<Rational> binomial_in_legendre(int degree) {
  check_order(degree, "binomial_in_legendre");
  std::vector<Rational> coeffs;
  coeffs.reserve(degree + 1);
  for (int l = 0; l <= degree; ++l) {
    // 2^n (n!)^2 (2l+1) / ((n+l+1)! (n-l)!), with numerator and denominator
    // factors interleaved so every running value stays inside 64 bits.
    Rational c(int_pow2(degree) * (2 * l + 1), degree + l + 1);
    for (int i = 1; i <= l; ++i) c *= Rational(degree - l + i, degree + i);
    coeffs.push_back(c);
  }
  return coeffs;
}

double eval_legendre(int order, double x) {
  check_order(order, "eval_legendre");
  if (std::abs(x) > 1.0 + 1e-12)
    throw std::domain_error("eval_legendre: |x| must not exceed 1 + 1e-12");
  x = std::clamp(x, -1.0, 1.0);
  const LegendreCoeffs table = legendre_coeffs(order);
  const double x2 = x * x;
  // Horner in x^2, highest power first; odd orders carry one extra factor x.
  double acc = 0.0;
  for (int k = 0; k <= order / 2; ++k) acc = acc * x2 + table.coeffs[k].to_double();
  if (order % 2 == 1) acc *= x;
  return acc;
}

}  // namespace msm
