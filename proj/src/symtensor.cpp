#include "msm/symtensor.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <tuple>

#include "msm/config.hpp"

namespace msm {

namespace {

using Complex = std::complex<double>;

void check_rank(int rank, const char* what) {
  if (rank < 0) throw std::invalid_argument(std::string(what) + ": negative rank");
  if (rank > kMaxRank)
    throw RankCapError(std::string(what) + ": rank " + std::to_string(rank) + " exceeds cap " +
                       std::to_string(kMaxRank));
}

ScalarKind combine(ScalarKind a, ScalarKind b) {
  return (a == ScalarKind::complex || b == ScalarKind::complex) ? ScalarKind::complex
                                                                : ScalarKind::real;
}

std::int64_t multinomial(int n, int p, int q, int s) {
  return factorial(n) / (factorial(p) * factorial(q) * factorial(s));
}

}  // namespace

SymTensor::SymTensor(int rank, ScalarKind kind) : rank_(rank), kind_(kind) {
  check_rank(rank, "SymTensor");
  coeffs_.assign(coeff_count(rank), Complex{0.0, 0.0});
}

int SymTensor::slot(int rank, int p, int q) {
  const int d = rank - p;
  return d * (d + 1) / 2 + (d - q);
}

MultiIndex SymTensor::index_at(int rank, int slot) {
  // Invert slot = d(d+1)/2 + (d - q) with d = rank - p.
  int d = 0;
  while ((d + 1) * (d + 2) / 2 <= slot) ++d;
  const int q = d - (slot - d * (d + 1) / 2);
  return MultiIndex{rank - d, q, d - q};
}

std::complex<double> SymTensor::coeff(int p, int q, int s) const {
  if (p < 0 || q < 0 || s < 0 || p + q + s != rank_)
    throw std::invalid_argument("SymTensor::coeff: bad multi-index");
  return coeffs_[slot(rank_, p, q)];
}

void SymTensor::set_coeff(int p, int q, int s, Complex value) {
  if (p < 0 || q < 0 || s < 0 || p + q + s != rank_)
    throw std::invalid_argument("SymTensor::set_coeff: bad multi-index");
  if (kind_ == ScalarKind::real && value.imag() != 0.0) kind_ = ScalarKind::complex;
  coeffs_[slot(rank_, p, q)] = value;
}

std::complex<double> SymTensor::cartesian_entry(int p, int q, int s) const {
  const Complex c = coeff(p, q, s);
  return c / static_cast<double>(multinomial(rank_, p, q, s));
}

double SymTensor::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs_)
    m = std::max({m, std::abs(c.real()), std::abs(c.imag())});
  return m;
}

SymTensor SymTensor::real_part() const {
  SymTensor out(rank_, ScalarKind::real);
  for (int i = 0; i < size(); ++i) out.coeffs_[i] = Complex{coeffs_[i].real(), 0.0};
  return out;
}

SymTensor& SymTensor::promote_to_complex() {
  kind_ = ScalarKind::complex;
  return *this;
}

SymTensor& SymTensor::operator*=(double s) {
  for (Complex& c : coeffs_) c *= s;
  return *this;
}

SymTensor& SymTensor::operator*=(Complex s) {
  if (s.imag() != 0.0) kind_ = ScalarKind::complex;
  for (Complex& c : coeffs_) c *= s;
  return *this;
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
  if (o.rank_ != rank_) throw std::invalid_argument("SymTensor::operator+=: rank mismatch");
  kind_ = combine(kind_, o.kind_);
  for (int i = 0; i < size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& o) {
  if (o.rank_ != rank_) throw std::invalid_argument("SymTensor::operator-=: rank mismatch");
  kind_ = combine(kind_, o.kind_);
  for (int i = 0; i < size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SymTensor delta_power(int k) {
  if (k < 0) throw std::invalid_argument("delta_power: negative power");
  check_rank(2 * k, "delta_power");
  SymTensor t(2 * k, ScalarKind::real);
  for (int i = 0; i < t.size(); ++i) {
    const MultiIndex mi = SymTensor::index_at(2 * k, i);
    if (mi.p % 2 == 0 && mi.q % 2 == 0 && mi.s % 2 == 0) {
      const int a = mi.p / 2, b = mi.q / 2, c = mi.s / 2;
      t[i] = static_cast<double>(multinomial(k, a, b, c));
    }
  }
  return t;
}

namespace {

SymTensor product_of_linear_forms(std::vector<CVec3> vs, ScalarKind kind) {
  check_rank(static_cast<int>(vs.size()), "from_vectors");
  // Canonical input order makes the accumulated product bit-identical under
  // permutation of the inputs.
  std::sort(vs.begin(), vs.end(), [](const CVec3& a, const CVec3& b) {
    return std::make_tuple(a.x.real(), a.x.imag(), a.y.real(), a.y.imag(), a.z.real(),
                           a.z.imag()) < std::make_tuple(b.x.real(), b.x.imag(), b.y.real(),
                                                         b.y.imag(), b.z.real(), b.z.imag());
  });
  SymTensor acc(0, kind);
  acc[0] = Complex{1.0, 0.0};
  for (const CVec3& v : vs) {
    const int n = acc.rank() + 1;
    SymTensor next(n, kind);
    // Gather form of multiplication by (v_x x + v_y y + v_z z).
    for (int i = 0; i < next.size(); ++i) {
      const MultiIndex mi = SymTensor::index_at(n, i);
      Complex sum{0.0, 0.0};
      if (mi.p > 0) sum += v.x * acc[SymTensor::slot(n - 1, mi.p - 1, mi.q)];
      if (mi.q > 0) sum += v.y * acc[SymTensor::slot(n - 1, mi.p, mi.q - 1)];
      if (mi.s > 0) sum += v.z * acc[SymTensor::slot(n - 1, mi.p, mi.q)];
      next[i] = sum;
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

SymTensor from_vectors(std::span<const Vec3> vectors) {
  std::vector<CVec3> vs;
  vs.reserve(vectors.size());
  for (const Vec3& v : vectors) vs.emplace_back(v);
  return product_of_linear_forms(std::move(vs), ScalarKind::real);
}

SymTensor from_vectors(std::span<const CVec3> vectors) {
  return product_of_linear_forms({vectors.begin(), vectors.end()}, ScalarKind::complex);
}

SymTensor from_vectors(std::initializer_list<Vec3> vectors) {
  return from_vectors(std::span<const Vec3>(vectors.begin(), vectors.size()));
}

SymTensor sym_product(const SymTensor& a, const SymTensor& b) {
  const int n = a.rank() + b.rank();
  check_rank(n, "sym_product");
  SymTensor out(n, combine(a.kind(), b.kind()));
  // Convolution, gathering over the coefficients of a in canonical order.
  for (int i = 0; i < out.size(); ++i) {
    const MultiIndex mi = SymTensor::index_at(n, i);
    Complex sum{0.0, 0.0};
    for (int j = 0; j < a.size(); ++j) {
      const MultiIndex ai = SymTensor::index_at(a.rank(), j);
      const int bp = mi.p - ai.p, bq = mi.q - ai.q, bs = mi.s - ai.s;
      if (bp < 0 || bq < 0 || bs < 0) continue;
      sum += a[j] * b[SymTensor::slot(b.rank(), bp, bq)];
    }
    out[i] = sum;
  }
  return out;
}

SymTensor laplacian(const SymTensor& a) {
  const int n = a.rank();
  if (n < 2) throw std::invalid_argument("laplacian: rank must be at least 2");
  SymTensor out(n - 2, a.kind());
  for (int i = 0; i < out.size(); ++i) {
    const MultiIndex mi = SymTensor::index_at(n - 2, i);
    Complex sum{0.0, 0.0};
    sum += static_cast<double>((mi.p + 2) * (mi.p + 1)) * a[SymTensor::slot(n, mi.p + 2, mi.q)];
    sum += static_cast<double>((mi.q + 2) * (mi.q + 1)) * a[SymTensor::slot(n, mi.p, mi.q + 2)];
    sum += static_cast<double>((mi.s + 2) * (mi.s + 1)) * a[SymTensor::slot(n, mi.p, mi.q)];
    out[i] = sum;
  }
  return out;
}

SymTensor trace(const SymTensor& a, int folds) {
  const int n = a.rank();
  if (folds < 0 || 2 * folds > n)
    throw std::invalid_argument("trace: fold count must satisfy 0 <= 2p <= rank");
  SymTensor out = a;
  for (int p = 0; p < folds; ++p) out = laplacian(out);
  const double scale = (factorial_ratio(n - 2 * folds, 0) / factorial_ratio(n, 0)).to_double();
  out *= scale;
  return out;
}

SymTensor multiply_by_r2_power(const SymTensor& a, int k) {
  if (k < 0) throw std::invalid_argument("multiply_by_r2_power: negative power");
  SymTensor out = a;
  for (int j = 0; j < k; ++j) {
    const int n = out.rank() + 2;
    check_rank(n, "multiply_by_r2_power");
    SymTensor next(n, out.kind());
    for (int i = 0; i < next.size(); ++i) {
      const MultiIndex mi = SymTensor::index_at(n, i);
      Complex sum{0.0, 0.0};
      if (mi.p >= 2) sum += out[SymTensor::slot(n - 2, mi.p - 2, mi.q)];
      if (mi.q >= 2) sum += out[SymTensor::slot(n - 2, mi.p, mi.q - 2)];
      if (mi.s >= 2) sum += out[SymTensor::slot(n - 2, mi.p, mi.q)];
      next[i] = sum;
    }
    out = std::move(next);
  }
  return out;
}

SymTensor directional_derivative(const SymTensor& a, const CVec3& v) {
  const int n = a.rank();
  if (n < 1) throw std::invalid_argument("directional_derivative: rank 0");
  const bool complex_v = v.x.imag() != 0.0 || v.y.imag() != 0.0 || v.z.imag() != 0.0;
  SymTensor out(n - 1, complex_v ? ScalarKind::complex : a.kind());
  for (int i = 0; i < out.size(); ++i) {
    const MultiIndex mi = SymTensor::index_at(n - 1, i);
    Complex sum{0.0, 0.0};
    sum += v.x * static_cast<double>(mi.p + 1) * a[SymTensor::slot(n, mi.p + 1, mi.q)];
    sum += v.y * static_cast<double>(mi.q + 1) * a[SymTensor::slot(n, mi.p, mi.q + 1)];
    sum += v.z * static_cast<double>(mi.s + 1) * a[SymTensor::slot(n, mi.p, mi.q)];
    out[i] = sum;
  }
  return out;
}

namespace {

// d^i/dx^i d^j/dy^j d^k/dz^k applied to the polynomial, exact integer factors.
SymTensor partial_derivative(const SymTensor& a, int dx, int dy, int dz) {
  const int n = a.rank() - dx - dy - dz;
  SymTensor out(n, a.kind());
  for (int i = 0; i < out.size(); ++i) {
    const MultiIndex mi = SymTensor::index_at(n, i);
    const double f =
        static_cast<double>(factorial(mi.p + dx) / factorial(mi.p) *
                            (factorial(mi.q + dy) / factorial(mi.q)) *
                            (factorial(mi.s + dz) / factorial(mi.s)));
    out[i] = f * a[SymTensor::slot(a.rank(), mi.p + dx, mi.q + dy)];
  }
  return out;
}

}  // namespace

SymTensor contract(const SymTensor& a, const SymTensor& b, int pairs) {
  const int n = a.rank(), m = b.rank();
  if (pairs < 0 || pairs > std::min(n, m))
    throw std::invalid_argument("contract: pair count exceeds the smaller rank");
  check_rank(n + m - 2 * pairs, "contract");
  // C(r) = sum over p shared Cartesian indices of A[e..., r...] B[e..., r...],
  // grouped by the derivative multiset (i, j, k) with multinomial weight.
  const double scale = (factorial_ratio(n - pairs, 0) / factorial_ratio(n, 0)).to_double() *
                       (factorial_ratio(m - pairs, 0) / factorial_ratio(m, 0)).to_double();
  SymTensor out(n + m - 2 * pairs, combine(a.kind(), b.kind()));
  for (int i = 0; i <= pairs; ++i) {
    for (int j = 0; j <= pairs - i; ++j) {
      const int k = pairs - i - j;
      const double w = static_cast<double>(multinomial(pairs, i, j, k));
      const SymTensor da = partial_derivative(a, i, j, k);
      const SymTensor db = partial_derivative(b, i, j, k);
      SymTensor term = sym_product(da, db);
      term *= w;
      out += term;
    }
  }
  out *= scale;
  return out;
}

std::complex<double> full_contraction_scalar(const SymTensor& a, const SymTensor& b) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("full_contraction_scalar: rank mismatch");
  return contract(a, b, a.rank())[0];
}

namespace {

template <typename V>
Complex polarization_impl(const SymTensor& a, std::span<const V> vectors) {
  if (static_cast<int>(vectors.size()) != a.rank())
    throw std::invalid_argument("apply_polarization: vector count must equal the rank");
  SymTensor acc = a;
  for (const V& v : vectors) acc = directional_derivative(acc, CVec3(v));
  const double inv_fact = (Rational(1) / factorial_ratio(a.rank(), 0)).to_double();
  return acc[0] * inv_fact;
}

}  // namespace

std::complex<double> apply_polarization(const SymTensor& a, std::span<const Vec3> vectors) {
  return polarization_impl<Vec3>(a, vectors);
}

std::complex<double> apply_polarization(const SymTensor& a, std::span<const CVec3> vectors) {
  return polarization_impl<CVec3>(a, vectors);
}

namespace {

template <typename S>
Complex evaluate_impl(const SymTensor& a, S x, S y, S z) {
  const int n = a.rank();
  std::array<S, kMaxRank + 1> px, py, pz;
  px[0] = py[0] = pz[0] = S{1.0};
  for (int i = 1; i <= n; ++i) {
    px[i] = px[i - 1] * x;
    py[i] = py[i - 1] * y;
    pz[i] = pz[i - 1] * z;
  }
  Complex sum{0.0, 0.0};
  for (int i = 0; i < a.size(); ++i) {
    const MultiIndex mi = SymTensor::index_at(n, i);
    sum += a[i] * px[mi.p] * py[mi.q] * pz[mi.s];
  }
  return sum;
}

}  // namespace

std::complex<double> evaluate(const SymTensor& a, const Vec3& r) {
  return evaluate_impl<double>(a, r.x, r.y, r.z);
}

std::complex<double> evaluate(const SymTensor& a, const CVec3& r) {
  return evaluate_impl<Complex>(a, r.x, r.y, r.z);
}

double max_abs_difference(const SymTensor& a, const SymTensor& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("max_abs_difference: rank mismatch");
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace msm
