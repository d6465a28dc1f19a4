#include "msm/oracle.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "msm/config.hpp"

namespace msm {

namespace {

using Complex = std::complex<double>;

}  // namespace

AngularMomentum angular_momentum_matrices(int two_j) {
  if (two_j < 0) throw std::invalid_argument("angular_momentum_matrices: negative 2J");
  const int dim = two_j + 1;
  SpinMatrix jz = SpinMatrix::Zero(dim, dim);
  SpinMatrix jplus = SpinMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) jz(i, i) = 0.5 * (two_j - 2 * i);
  // J+ raises m: index i (m = J - i) maps to i - 1, with
  // sqrt((J-m)(J+m+1)) = sqrt(i (2J - i + 1)).
  for (int i = 1; i < dim; ++i)
    jplus(i - 1, i) = std::sqrt(static_cast<double>(i) * (two_j - i + 1));
  const SpinMatrix jminus = jplus.adjoint();
  AngularMomentum out;
  out.jx = 0.5 * (jplus + jminus);
  out.jy = Complex{0.0, -0.5} * (jplus - jminus);
  out.jz = jz;
  return out;
}

namespace {

class SymmetrizedProducts {
 public:
  SymmetrizedProducts(int two_j) : ops_(angular_momentum_matrices(two_j)), dim_(two_j + 1) {}

  // Average of the matrix products over all distinct orderings of p Jx's,
  // q Jy's and s Jz's.
  const SpinMatrix& get(int p, int q, int s) {
    const auto key = std::make_tuple(p, q, s);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    SpinMatrix value;
    const int n = p + q + s;
    if (n == 0) {
      value = SpinMatrix::Identity(dim_, dim_);
    } else {
      value = SpinMatrix::Zero(dim_, dim_);
      if (p > 0) value += static_cast<double>(p) * (ops_.jx * get(p - 1, q, s));
      if (q > 0) value += static_cast<double>(q) * (ops_.jy * get(p, q - 1, s));
      if (s > 0) value += static_cast<double>(s) * (ops_.jz * get(p, q, s - 1));
      value /= static_cast<double>(n);
    }
    return memo_[key] = std::move(value);
  }

 private:
  AngularMomentum ops_;
  int dim_;
  std::map<std::tuple<int, int, int>, SpinMatrix> memo_;
};

}  // namespace

SpinMatrix quantize_symmetrized(const SymTensor& poly, int two_j) {
  if (poly.rank() > kMaxQuantizeRank)
    throw RankCapError("quantize_symmetrized: rank exceeds " +
                       std::to_string(kMaxQuantizeRank));
  const double mag = std::max(1.0, poly.max_abs_coeff());
  SymmetrizedProducts products(two_j);
  SpinMatrix out = SpinMatrix::Zero(two_j + 1, two_j + 1);
  for (int i = 0; i < poly.size(); ++i) {
    const Complex c = poly[i];
    if (std::abs(c.imag()) > 1e-12 * mag)
      throw std::invalid_argument("quantize_symmetrized: polynomial must be real");
    if (c.real() == 0.0) continue;
    const MultiIndex mi = SymTensor::index_at(poly.rank(), i);
    out += c.real() * products.get(mi.p, mi.q, mi.s);
  }
  return out;
}

double expectation_value(const SpinState& psi, const SpinMatrix& m) {
  if (m.rows() != psi.dim() || m.cols() != psi.dim())
    throw std::invalid_argument("expectation_value: dimension mismatch");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("expectation_value: matrix is not Hermitian");
  Eigen::VectorXcd v(psi.dim());
  for (int i = 0; i < psi.dim(); ++i) v(i) = psi.amp(i);
  return (v.adjoint() * m * v)(0, 0).real();
}

double resolution_of_unity_deviation(int two_j, int band_limit, Exec exec) {
  const int dim = two_j + 1;
  const std::vector<SphereNode>& nodes = sphere_rule(band_limit);
  const std::size_t width = static_cast<std::size_t>(dim) * dim * 2;
  std::vector<double> acc(width, 0.0);
  accumulate_nodes(
      nodes.size(), width, exec,
      [&](std::size_t i, std::span<double> slot) {
        const SpinState coh = coherent_state(two_j, nodes[i].dir);
        const double w = (two_j + 1) * nodes[i].weight;
        std::size_t k = 0;
        for (int r = 0; r < dim; ++r) {
          for (int c = 0; c < dim; ++c) {
            const Complex entry = w * coh.amp(r) * std::conj(coh.amp(c));
            slot[k++] = entry.real();
            slot[k++] = entry.imag();
          }
        }
      },
      acc);
  double deviation = 0.0;
  std::size_t k = 0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const Complex entry{acc[k], acc[k + 1]};
      k += 2;
      const Complex expected = (r == c) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      deviation = std::max(deviation, std::abs(entry - expected));
    }
  }
  return deviation;
}

SpinMatrix rotation_operator(int two_j, const Vec3& axis, double angle) {
  const Vec3 u = normalized(axis);
  const AngularMomentum ops = angular_momentum_matrices(two_j);
  const SpinMatrix gen =
      Complex{0.0, -angle} * (u.x * ops.jx + u.y * ops.jy + u.z * ops.jz);
  // Scaled squaring with a plain Taylor kernel; dimensions are tiny.
  const double scale = gen.cwiseAbs().maxCoeff() * gen.rows();
  int squarings = 0;
  while (scale / std::pow(2.0, squarings) > 0.5) ++squarings;
  const SpinMatrix small = gen / std::pow(2.0, squarings);
  SpinMatrix result = SpinMatrix::Identity(gen.rows(), gen.cols());
  SpinMatrix term = SpinMatrix::Identity(gen.rows(), gen.cols());
  for (int k = 1; k <= 24; ++k) {
    term = (term * small) / static_cast<double>(k);
    result += term;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

SpinState apply_operator(const SpinMatrix& m, const SpinState& psi) {
  if (m.cols() != psi.dim()) throw std::invalid_argument("apply_operator: dimension mismatch");
  Eigen::VectorXcd v(psi.dim());
  for (int i = 0; i < psi.dim(); ++i) v(i) = psi.amp(i);
  const Eigen::VectorXcd w = m * v;
  std::vector<Complex> amps(w.size());
  for (int i = 0; i < w.size(); ++i) amps[i] = w(i);
  return SpinState(psi.two_j(), std::move(amps), /*renormalize=*/false);
}

}  // namespace msm
