#include "msm/harmonic.hpp"

#include <cmath>
#include <stdexcept>

#include "msm/config.hpp"
#include "msm/legendre.hpp"

namespace msm {

double trace_deviation(const SymTensor& a) {
  if (a.rank() < 2) return 0.0;
  return trace(a, 1).max_abs_coeff() / std::max(1.0, a.max_abs_coeff());
}

HarmonicTensor::HarmonicTensor(SymTensor base, double tol) : base_(std::move(base)) {
  const double dev = trace_deviation(base_);
  if (dev > tol)
    throw NotTracelessError("HarmonicTensor: trace deviation " + std::to_string(dev) +
                            " exceeds tolerance");
}

HarmonicTensor HarmonicTensor::unchecked(SymTensor base) {
  HarmonicTensor h;
  h.base_ = std::move(base);
  return h;
}

std::vector<HarmonicTensor> harmonic_components(const SymTensor& a) {
  const int n = a.rank();
  const int half = n / 2;
  // Unscaled iterated Laplacians; the (n-2p)!/n! trace scale is folded into
  // the exact rational coefficient below.
  std::vector<SymTensor> lap;
  lap.reserve(half + 1);
  lap.push_back(a);
  for (int p = 1; p <= half; ++p) lap.push_back(laplacian(lap.back()));

  const std::vector<Rational> q = monomial_in_legendre(n);
  std::vector<HarmonicTensor> components;
  components.reserve(half + 1);
  for (int k = 0; k <= half; ++k) {
    const int order = n - 2 * k;
    const LegendreCoeffs pin = legendre_coeffs(order);
    SymTensor comp(order, a.kind());
    for (int p = k; p <= half; ++p) {
      const Rational factor =
          q[k] * pin.coeffs[p - k] * (factorial_ratio(n - 2 * p, 0) / factorial_ratio(n, 0));
      SymTensor term = multiply_by_r2_power(lap[p], p - k);
      term *= factor.to_double();
      comp += term;
    }
    components.push_back(HarmonicTensor::unchecked(std::move(comp)));
  }
  return components;
}

SymTensor reconstruct(std::span<const HarmonicTensor> components) {
  if (components.empty()) throw std::invalid_argument("reconstruct: no components");
  const int n = components.front().order();
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (components[k].order() != n - 2 * static_cast<int>(k))
      throw std::invalid_argument("reconstruct: component orders must descend by 2");
  }
  SymTensor sum(n, components.front().base().kind());
  for (std::size_t k = 0; k < components.size(); ++k)
    sum += multiply_by_r2_power(components[k].base(), static_cast<int>(k));
  return sum;
}

std::complex<double> eval_spherical(const HarmonicTensor& h, const Vec3& n) {
  const double r = norm(n);
  if (r == 0.0) throw std::domain_error("eval_spherical: zero direction");
  return evaluate(h.base(), normalized(n));
}

std::complex<double> eval_regular(const HarmonicTensor& h, const Vec3& r) {
  return evaluate(h.base(), r);
}

std::complex<double> eval_irregular(const HarmonicTensor& h, const Vec3& r) {
  const double rn = norm(r);
  if (rn == 0.0) throw std::domain_error("eval_irregular: singular at the origin");
  return evaluate(h.base(), r) / std::pow(rn, 2 * h.order() + 1);
}

namespace {

double pairing_sum(std::vector<int>& free_idx, std::span<const Vec3> vs) {
  if (free_idx.empty()) return 1.0;
  const int first = free_idx.front();
  double sum = 0.0;
  for (std::size_t j = 1; j < free_idx.size(); ++j) {
    const int partner = free_idx[j];
    std::vector<int> rest;
    rest.reserve(free_idx.size() - 2);
    for (std::size_t k = 1; k < free_idx.size(); ++k)
      if (k != j) rest.push_back(free_idx[k]);
    sum += dot(vs[first], vs[partner]) * pairing_sum(rest, vs);
  }
  return sum;
}

}  // namespace

double sphere_average_product(std::span<const Vec3> vectors) {
  const int n = static_cast<int>(vectors.size());
  if (n > kMaxRank) throw RankCapError("sphere_average_product: too many vectors");
  if (n % 2 == 1) return 0.0;
  if (n == 0) return 1.0;
  const int m = n / 2;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  const double sum = pairing_sum(all, vectors);
  return sum / static_cast<double>((2 * m + 1) * double_factorial(2 * m - 1));
}

Rational monomial_sphere_integral(int p, int q, int r) {
  if (p < 0 || q < 0 || r < 0)
    throw std::invalid_argument("monomial_sphere_integral: negative exponent half");
  if (p + q + r > kMaxRank) throw RankCapError("monomial_sphere_integral: degree cap exceeded");
  Rational value = factorial_ratio(2 * p, p);
  value *= factorial_ratio(2 * q, q);
  value *= factorial_ratio(2 * r, r);
  value *= factorial_ratio(p + q + r, 2 * (p + q + r) + 1);
  return value;
}

std::complex<double> harmonic_inner_product(const HarmonicTensor& a, const HarmonicTensor& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("harmonic_inner_product: order mismatch");
  const int n = a.order();
  const Rational w = factorial_ratio(n, 0) / Rational(double_factorial(2 * n + 1));
  return w.to_double() * full_contraction_scalar(a.base(), b.base());
}

std::complex<double> harmonic_contraction_via_traces(const SymTensor& a, const SymTensor& b) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("harmonic_contraction_via_traces: rank mismatch");
  const int n = a.rank();
  std::complex<double> sum{0.0, 0.0};
  for (int p = 0; p <= n / 2; ++p) {
    Rational c = factorial_ratio(n, 0) * Rational(double_factorial(2 * n - 2 * p - 1));
    c /= Rational(int_pow2(p) * factorial(p));
    c /= Rational(double_factorial(2 * n - 1));
    c /= factorial_ratio(n - 2 * p, 0);
    if (p % 2 == 1) c = -c;
    sum += c.to_double() * full_contraction_scalar(trace(a, p), trace(b, p));
  }
  return sum;
}

namespace {

// Coefficients of (u . r)^m: multinomial(m; p,q,s) u_x^p u_y^q u_z^s.
SymTensor linear_form_power(const Vec3& u, int m) {
  SymTensor t(m, ScalarKind::real);
  std::array<double, kMaxRank + 1> px, py, pz;
  px[0] = py[0] = pz[0] = 1.0;
  for (int i = 1; i <= m; ++i) {
    px[i] = px[i - 1] * u.x;
    py[i] = py[i - 1] * u.y;
    pz[i] = pz[i - 1] * u.z;
  }
  for (int i = 0; i < t.size(); ++i) {
    const MultiIndex mi = SymTensor::index_at(m, i);
    const double mult = static_cast<double>(
        factorial(m) / (factorial(mi.p) * factorial(mi.q) * factorial(mi.s)));
    t[i] = mult * px[mi.p] * py[mi.q] * pz[mi.s];
  }
  return t;
}

}  // namespace

HarmonicTensor project_spherical_function(const std::function<double(const Vec3&)>& f, int order,
                                          int band_limit, Exec exec) {
  if (order < 0 || order > kMaxRank)
    throw RankCapError("project_spherical_function: order cap exceeded");
  if (band_limit < 0 || band_limit > kMaxBandLimit)
    throw std::invalid_argument("project_spherical_function: band limit out of range");
  const std::vector<SphereNode>& nodes = sphere_rule(band_limit + order);
  const LegendreCoeffs pl = legendre_coeffs(order);
  const int width = SymTensor::coeff_count(order);

  std::vector<double> coeffs(width, 0.0);
  accumulate_nodes(
      nodes.size(), width, exec,
      [&](std::size_t i, std::span<double> slot) {
        const SphereNode& node = nodes[i];
        const double scale = (2 * order + 1) * node.weight * f(node.dir);
        // Solid-harmonic kernel in r for this node direction:
        // sum_k p_{l,k} (u.r)^(l-2k) (r.r)^k.
        SymTensor acc(order, ScalarKind::real);
        for (int k = 0; k <= order / 2; ++k) {
          SymTensor term =
              multiply_by_r2_power(linear_form_power(node.dir, order - 2 * k), k);
          term *= pl.coeffs[k].to_double();
          acc += term;
        }
        for (int w = 0; w < width; ++w) slot[w] = scale * acc[w].real();
      },
      coeffs);

  SymTensor out(order, ScalarKind::real);
  for (int w = 0; w < width; ++w) out[w] = coeffs[w];
  return HarmonicTensor::unchecked(std::move(out));
}

}  // namespace msm
