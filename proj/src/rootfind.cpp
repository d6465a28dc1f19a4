#include "msm/rootfind.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace msm {

namespace {

using Complex = std::complex<double>;

struct HornerResult {
  Complex value;
  Complex derivative;
};

HornerResult horner(std::span<const Complex> monic, Complex z) {
  Complex p{0.0, 0.0}, dp{0.0, 0.0};
  for (int k = static_cast<int>(monic.size()) - 1; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + monic[k];
  }
  return {p, dp};
}

std::vector<Complex> companion_eigenvalues(std::span<const Complex> monic) {
  const int d = static_cast<int>(monic.size()) - 1;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -monic[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
  std::vector<Complex> roots(d);
  for (int i = 0; i < d; ++i) roots[i] = solver.eigenvalues()(i);
  return roots;
}

void newton_polish(std::span<const Complex> monic, std::vector<Complex>& roots) {
  for (Complex& z : roots) {
    for (int iter = 0; iter < 4; ++iter) {
      const HornerResult h = horner(monic, z);
      if (std::abs(h.derivative) == 0.0) break;
      const Complex step = h.value / h.derivative;
      z -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
  }
}

}  // namespace

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial_roots: empty coefficient list");
  const int degree = static_cast<int>(coeffs.size()) - 1;
  if (degree == 0) return {};
  if (std::abs(coeffs[degree]) == 0.0)
    throw std::invalid_argument("polynomial_roots: zero leading coefficient");

  // Monic normalization, deflating exact zero roots at the origin first.
  std::vector<Complex> monic(coeffs.begin(), coeffs.end());
  for (Complex& c : monic) c /= coeffs[degree];
  std::vector<Complex> roots;
  while (monic.size() > 1 && std::abs(monic[0]) == 0.0) {
    roots.emplace_back(0.0, 0.0);
    monic.erase(monic.begin());
  }
  const int d = static_cast<int>(monic.size()) - 1;
  if (d == 0) return roots;

  // Aberth-Ehrlich: start on a staggered circle inside the Cauchy bound.
  double bound = 0.0;
  for (int k = 0; k < d; ++k) bound = std::max(bound, std::abs(monic[k]));
  bound = 1.0 + bound;
  const double radius = std::min(bound, std::max(0.5, std::pow(std::abs(monic[0]), 1.0 / d)));
  std::vector<Complex> z(d);
  for (int i = 0; i < d; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / d + 0.4;
    z[i] = radius * (1.0 + 0.05 * i / d) * Complex{std::cos(angle), std::sin(angle)};
  }

  bool converged = false;
  for (int iter = 0; iter < 300 && !converged; ++iter) {
    converged = true;
    for (int i = 0; i < d; ++i) {
      const HornerResult h = horner(monic, z[i]);
      if (std::abs(h.value) == 0.0) continue;
      Complex w;
      if (std::abs(h.derivative) == 0.0) {
        w = Complex{1e-8, 1e-8};
      } else {
        w = h.value / h.derivative;
      }
      Complex repulsion{0.0, 0.0};
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        const Complex diff = z[i] - z[j];
        if (std::abs(diff) == 0.0) continue;
        repulsion += 1.0 / diff;
      }
      const Complex denom = 1.0 - w * repulsion;
      const Complex step = std::abs(denom) == 0.0 ? w : w / denom;
      z[i] -= step;
      if (std::abs(step) > 1e-13 * (1.0 + std::abs(z[i]))) converged = false;
    }
  }

  if (!converged) z = companion_eigenvalues(monic);
  newton_polish(monic, z);
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

TrimmedRoots roots_with_infinity(std::span<const Complex> coeffs, int expected_degree,
                                 double rel_tol) {
  if (static_cast<int>(coeffs.size()) != expected_degree + 1)
    throw std::invalid_argument("roots_with_infinity: coefficient count mismatch");
  double max_mag = 0.0;
  for (const Complex& c : coeffs) max_mag = std::max(max_mag, std::abs(c));
  if (max_mag == 0.0) throw std::invalid_argument("roots_with_infinity: zero polynomial");

  int top = expected_degree;
  while (top > 0 && std::abs(coeffs[top]) <= rel_tol * max_mag) --top;
  TrimmedRoots result;
  result.at_infinity = expected_degree - top;
  result.finite = polynomial_roots(coeffs.subspan(0, top + 1));
  return result;
}

}  // namespace msm
