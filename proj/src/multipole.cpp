#include "msm/multipole.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "msm/config.hpp"
#include "msm/rootfind.hpp"

namespace msm {

namespace {

using Complex = std::complex<double>;

bool needs_flip(const Vec3& u) {
  if (u.z != 0.0) return u.z < 0.0;
  if (u.x != 0.0) return u.x < 0.0;
  return u.y < 0.0;
}

}  // namespace

Skeleton canonicalized(Skeleton s) {
  if (s.scale < 0.0) {
    s.scale = -s.scale;
    s.sign = -s.sign;
  }
  for (Vec3& u : s.axes) {
    u = normalized(u);
    if (needs_flip(u)) {
      u = -u;
      s.sign = -s.sign;
    }
  }
  std::sort(s.axes.begin(), s.axes.end(), [](const Vec3& a, const Vec3& b) {
    return std::make_tuple(a.z, a.x, a.y) > std::make_tuple(b.z, b.x, b.y);
  });
  return s;
}

HarmonicTensor skeleton_to_harmonic(const Skeleton& s) {
  SymTensor product = from_vectors(std::span<const Vec3>(s.axes));
  product *= s.sign * s.scale;
  return harmonic_components(product).front();
}

double maxwell_potential(const Skeleton& s, const Vec3& r) {
  const double rn = norm(r);
  if (rn == 0.0) throw std::domain_error("maxwell_potential: singular at the origin");
  const int l = s.order();
  // Numerator polynomial of the iterated derivative of 1/r: each directional
  // derivative maps P / r^m to ((u . grad P) r^2 - m (u . r) P) / r^(m+2).
  SymTensor numerator(0, ScalarKind::real);
  numerator[0] = 1.0;
  int exponent = 1;
  for (const Vec3& axis : s.axes) {
    const Vec3 u = normalized(axis);
    SymTensor next = sym_product(from_vectors({u}), numerator);
    next *= -static_cast<double>(exponent);
    if (numerator.rank() >= 1)
      next += multiply_by_r2_power(directional_derivative(numerator, CVec3(u)), 1);
    numerator = std::move(next);
    exponent += 2;
  }
  const double parity = (l % 2 == 0) ? 1.0 : -1.0;
  const double prefactor =
      s.sign * s.scale * parity / factorial_ratio(l, 0).to_double();
  return prefactor * evaluate(numerator, r).real() / std::pow(rn, exponent);
}

namespace {

// Point on the Riemann sphere: a finite complex number or infinity.
struct RiemannPoint {
  Complex z{0.0, 0.0};
  bool infinite = false;
};

RiemannPoint antipode(const RiemannPoint& p) {
  if (p.infinite) return {Complex{0.0, 0.0}, false};
  if (std::abs(p.z) == 0.0) return {Complex{0.0, 0.0}, true};
  return {-1.0 / std::conj(p.z), false};
}

double chordal_distance(const RiemannPoint& a, const RiemannPoint& b) {
  if (a.infinite && b.infinite) return 0.0;
  if (a.infinite) return 1.0 / std::sqrt(1.0 + std::norm(b.z));
  if (b.infinite) return 1.0 / std::sqrt(1.0 + std::norm(a.z));
  return std::abs(a.z - b.z) / std::sqrt((1.0 + std::norm(a.z)) * (1.0 + std::norm(b.z)));
}

// Inverse stereographic image: the axis whose north-facing root is p.
Vec3 axis_from_point(const RiemannPoint& p) {
  if (p.infinite) return kZAxis;
  const double n2 = std::norm(p.z);
  const double denom = 1.0 + n2;
  return {2.0 * p.z.real() / denom, -2.0 * p.z.imag() / denom, (n2 - 1.0) / denom};
}

// Coefficients in z of the tensor polynomial evaluated on the null curve
// ((1 - z^2)/2, -i (1 + z^2)/2, z).
std::vector<Complex> null_curve_polynomial(const SymTensor& t) {
  const int l = t.rank();
  const std::vector<Complex> x_quad{Complex{0.5, 0.0}, Complex{0.0, 0.0}, Complex{-0.5, 0.0}};
  const std::vector<Complex> y_quad{Complex{0.0, -0.5}, Complex{0.0, 0.0}, Complex{0.0, -0.5}};

  auto convolve = [](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> out(a.size() + b.size() - 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  };

  std::vector<std::vector<Complex>> x_pow{{Complex{1.0, 0.0}}};
  std::vector<std::vector<Complex>> y_pow{{Complex{1.0, 0.0}}};
  for (int k = 1; k <= l; ++k) {
    x_pow.push_back(convolve(x_pow.back(), x_quad));
    y_pow.push_back(convolve(y_pow.back(), y_quad));
  }

  std::vector<Complex> result(2 * l + 1, Complex{0.0, 0.0});
  for (int i = 0; i < t.size(); ++i) {
    const MultiIndex mi = SymTensor::index_at(l, i);
    if (t[i] == Complex{0.0, 0.0}) continue;
    const std::vector<Complex> xy = convolve(x_pow[mi.p], y_pow[mi.q]);
    for (std::size_t k = 0; k < xy.size(); ++k) result[k + mi.s] += t[i] * xy[k];
  }
  return result;
}

}  // namespace

Skeleton sylvester_decompose(const HarmonicTensor& h) {
  const int l = h.order();
  if (l > kMaxSylvesterOrder)
    throw RankCapError("sylvester_decompose: order exceeds " +
                       std::to_string(kMaxSylvesterOrder));
  const double mag = h.base().max_abs_coeff();
  if (mag == 0.0) throw std::domain_error("sylvester_decompose: zero tensor");
  SymTensor base = h.base();
  if (base.kind() == ScalarKind::complex) {
    double max_imag = 0.0;
    for (int i = 0; i < base.size(); ++i)
      max_imag = std::max(max_imag, std::abs(base[i].imag()));
    if (max_imag > 1e-10 * mag)
      throw PairingError("sylvester_decompose: input tensor is not real");
    base = base.real_part();
  }
  if (trace_deviation(base) > 1e-9)
    throw NotTracelessError("sylvester_decompose: input is not traceless");

  if (l == 0) {
    Skeleton s;
    s.scale = std::abs(base[0].real());
    s.sign = base[0].real() < 0.0 ? -1 : 1;
    return s;
  }

  const TrimmedRoots roots = roots_with_infinity(null_curve_polynomial(base), 2 * l);

  std::vector<RiemannPoint> points;
  points.reserve(2 * l);
  for (int k = 0; k < roots.at_infinity; ++k) points.push_back({Complex{}, true});
  for (const Complex& z : roots.finite) points.push_back({z, false});

  // Greedy antipodal pairing in the chordal metric; degenerate root clusters
  // are consumed multiset-style.
  std::vector<bool> used(points.size(), false);
  std::vector<Vec3> axes;
  axes.reserve(l);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const RiemannPoint target = antipode(points[i]);
    int best = -1;
    double best_dist = 0.0;
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (used[j]) continue;
      const double dist = chordal_distance(target, points[j]);
      if (best < 0 || dist < best_dist) {
        best = static_cast<int>(j);
        best_dist = dist;
      }
    }
    if (best < 0 || best_dist > 1e-6)
      throw PairingError("sylvester_decompose: no antipodal partner within tolerance");
    used[best] = true;
    const Vec3 from_first = axis_from_point(points[i]);
    const Vec3 from_partner = axis_from_point(points[best]);
    axes.push_back(normalized(from_first - from_partner));
  }

  Skeleton s;
  s.axes = std::move(axes);
  s.scale = 1.0;
  s.sign = 1;
  s = canonicalized(std::move(s));

  // One least-squares evaluation fixes scale and sign.
  const HarmonicTensor unit = skeleton_to_harmonic(s);
  const double self = harmonic_inner_product(unit, unit).real();
  const double cross = harmonic_inner_product(HarmonicTensor::unchecked(base), unit).real();
  const double ratio = cross / self;
  s.scale = std::abs(ratio);
  s.sign *= ratio < 0.0 ? -1 : 1;
  return s;
}

double sylvester_residual(const HarmonicTensor& h, const Skeleton& s) {
  const HarmonicTensor rebuilt = skeleton_to_harmonic(s);
  return max_abs_difference(h.base(), rebuilt.base()) / std::max(1.0, h.base().max_abs_coeff());
}

namespace {

void check_frame(const Vec3& a, const Vec3& b) {
  if (std::abs(norm(a) - 1.0) > 1e-10 || std::abs(norm(b) - 1.0) > 1e-10 ||
      std::abs(dot(a, b)) > 1e-10)
    throw std::invalid_argument("sectorial: frame vectors must be orthonormal");
}

}  // namespace

HarmonicTensor sectorial(const Vec3& a, const Vec3& b, double phase, int order) {
  check_frame(a, b);
  if (order < 0 || order > kMaxRank) throw RankCapError("sectorial: order cap exceeded");
  const CVec3 c{Complex{a.x, b.x}, Complex{a.y, b.y}, Complex{a.z, b.z}};
  std::vector<CVec3> factors(order, c);
  SymTensor t = from_vectors(std::span<const CVec3>(factors));
  t *= std::exp(Complex{0.0, order * phase});
  return HarmonicTensor::unchecked(std::move(t));
}

HarmonicTensor real_sectorial(const Vec3& a, const Vec3& b, double phase, int order) {
  return HarmonicTensor::unchecked(sectorial(a, b, phase, order).base().real_part());
}

double interaction_energy(const HarmonicTensor& a, const HarmonicTensor& b) {
  if (a.order() != b.order()) throw std::invalid_argument("interaction_energy: order mismatch");
  const int l = a.order();
  if (l < 1) throw std::invalid_argument("interaction_energy: order must be at least 1");
  return harmonic_inner_product(a, b).real() / (static_cast<double>(l) * (l + 1));
}

GreatCircleSamples great_circle_samples(const Skeleton& s, int count) {
  if (count < 3) throw std::invalid_argument("great_circle_samples: need at least 3 samples");
  GreatCircleSamples out;
  const SymTensor poly = [&] {
    SymTensor p = from_vectors(std::span<const Vec3>(s.axes));
    p *= s.sign * s.scale;
    return p;
  }();
  for (const Vec3& axis : s.axes) {
    const Vec3 u = normalized(axis);
    const Vec3 e1 = any_perpendicular(u);
    const Vec3 e2 = cross(u, e1);
    std::vector<Vec3> ring;
    ring.reserve(count);
    for (int t = 0; t < count; ++t) {
      const double angle = 2.0 * std::numbers::pi * t / count;
      ring.push_back(std::cos(angle) * e1 + std::sin(angle) * e2);
    }
    out.circles.push_back(std::move(ring));
    for (const Vec3& pole : {u, -u}) {
      const double value = evaluate(poly, pole).real();
      out.face_samples.emplace_back(pole, value > 0.0 ? 1.0 : (value < 0.0 ? -1.0 : 0.0));
    }
  }
  return out;
}

}  // namespace msm
