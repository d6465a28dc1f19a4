#include "msm/spinstate.hpp"

#include <cmath>
#include <stdexcept>

#include "msm/config.hpp"
#include "msm/rootfind.hpp"

namespace msm {

namespace {

using Complex = std::complex<double>;

}  // namespace

SpinState::SpinState(int two_j, std::vector<Complex> amplitudes, bool renormalize)
    : two_j_(two_j), amps_(std::move(amplitudes)) {
  if (two_j < 0) throw std::invalid_argument("SpinState: negative 2J");
  if (static_cast<int>(amps_.size()) != two_j + 1)
    throw std::invalid_argument("SpinState: amplitude count must be 2J + 1");
  if (renormalize) {
    double n2 = 0.0;
    for (const Complex& a : amps_) n2 += std::norm(a);
    if (n2 <= 0.0) throw ZeroStateError("SpinState: zero state cannot be normalized");
    const double inv = 1.0 / std::sqrt(n2);
    for (Complex& a : amps_) a *= inv;
  }
}

double SpinState::norm() const {
  double n2 = 0.0;
  for (const Complex& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

std::complex<double> inner_product(const SpinState& a, const SpinState& b) {
  if (a.two_j() != b.two_j()) throw std::invalid_argument("inner_product: dimension mismatch");
  Complex sum{0.0, 0.0};
  for (int i = 0; i < a.dim(); ++i) sum += std::conj(a.amp(i)) * b.amp(i);
  return sum;
}

SpinState coherent_state(int two_j, const Vec3& n) {
  const Vec3 u = normalized(n);
  const double phi = polar_phi(u);
  // Half-angle factors straight from z, exact at the poles.
  const double c = std::sqrt(std::max(0.0, 0.5 * (1.0 + u.z)));
  const double s = std::sqrt(std::max(0.0, 0.5 * (1.0 - u.z)));
  std::vector<Complex> amps(two_j + 1);
  for (int i = 0; i <= two_j; ++i) {
    // i = J - m: amplitude sqrt(C(2J, i)) c^(2J-i) s^i e^(i i phi).
    const double mag =
        std::sqrt(static_cast<double>(binomial(two_j, i))) *
        std::pow(c, two_j - i) * std::pow(s, i);
    amps[i] = mag * std::exp(Complex{0.0, i * phi});
  }
  return SpinState(two_j, std::move(amps), /*renormalize=*/true);
}

double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double re = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  const double im = dot(a, cross(b, c));
  if (std::abs(re) < 1e-14 && std::abs(im) < 1e-14)
    throw std::domain_error("spherical_triangle_area: antipodal degeneracy");
  return 2.0 * std::atan2(im, re);
}

std::complex<double> overlap_geometric(int two_j, const Vec3& n1, const Vec3& n2) {
  const Vec3 a = normalized(n1);
  const Vec3 b = normalized(n2);
  if (two_j == 0) return Complex{1.0, 0.0};
  const double cosine = dot(a, b);
  if (cosine <= -1.0 + 1e-15) return Complex{0.0, 0.0};
  const double j = 0.5 * two_j;
  const double magnitude = std::pow(0.5 * (1.0 + cosine), j);
  const double phase = j * spherical_triangle_area(kZAxis, a, b);
  return magnitude * std::exp(Complex{0.0, phase});
}

std::complex<double> coherent_amplitude(const SpinState& psi, const Vec3& n) {
  return inner_product(coherent_state(psi.two_j(), n), psi);
}

double husimi(const SpinState& psi, const Vec3& n) {
  return std::norm(coherent_amplitude(psi, n));
}

Constellation majorana_stars(const SpinState& psi) {
  const int two_j = psi.two_j();
  std::vector<Complex> coeffs(two_j + 1);
  double max_mag = 0.0;
  for (int i = 0; i <= two_j; ++i) {
    coeffs[i] = psi.amp(i) * std::sqrt(static_cast<double>(binomial(two_j, i)));
    max_mag = std::max(max_mag, std::abs(coeffs[i]));
  }
  if (max_mag == 0.0) throw ZeroStateError("majorana_stars: zero state");

  const TrimmedRoots roots = roots_with_infinity(coeffs, two_j);
  Constellation c;
  c.two_j = two_j;
  c.stars.reserve(two_j);
  for (int k = 0; k < roots.at_infinity; ++k) c.stars.push_back(kZAxis);
  for (const Complex& zeta : roots.finite) {
    // zeta = tan(theta/2) e^(-i phi) locates a zero of the wave function;
    // the star is its antipode.
    const double theta = 2.0 * std::atan(std::abs(zeta));
    const double phi = std::abs(zeta) == 0.0 ? 0.0 : -std::arg(zeta);
    c.stars.push_back(-from_polar(theta, phi));
  }
  return c;
}

SpinState state_from_stars(const Constellation& c) {
  const int two_j = c.two_j;
  if (static_cast<int>(c.stars.size()) != two_j)
    throw std::invalid_argument("state_from_stars: star count must equal 2J");
  std::vector<Complex> poly{Complex{1.0, 0.0}};
  for (const Vec3& star : c.stars) {
    const Vec3 s = normalized(star);
    // A star at +z puts the zero at the south pole: a stereographic root at
    // infinity, i.e. one less polynomial degree.
    if (1.0 - s.z < 1e-13) continue;
    const Vec3 zero = -s;
    const double theta = polar_theta(zero);
    const double phi = polar_phi(zero);
    const Complex root = std::tan(0.5 * theta) * std::exp(Complex{0.0, -phi});
    // Multiply by (zeta - root).
    std::vector<Complex> next(poly.size() + 1, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= root * poly[k];
    }
    poly = std::move(next);
  }
  std::vector<Complex> amps(two_j + 1, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < poly.size(); ++k)
    amps[k] = poly[k] / std::sqrt(static_cast<double>(binomial(two_j, static_cast<int>(k))));
  return SpinState(two_j, std::move(amps), /*renormalize=*/true);
}

std::vector<HarmonicTensor> husimi_harmonic_components(const SpinState& psi, Exec exec) {
  const int two_j = psi.two_j();
  std::vector<HarmonicTensor> components;
  components.reserve(two_j + 1);
  for (int order = 0; order <= two_j; ++order) {
    components.push_back(project_spherical_function(
        [&](const Vec3& n) { return husimi(psi, n); }, order, 2 * two_j, exec));
  }
  return components;
}

}  // namespace msm
