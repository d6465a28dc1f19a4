#include "msm/observable.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "msm/config.hpp"
#include "msm/legendre.hpp"

namespace msm {

int ClassicalObservable::max_order() const {
  return components_.empty() ? -1 : components_.back().order;
}

void ClassicalObservable::add_component(int order, const HarmonicTensor& tensor) {
  if (tensor.order() != order)
    throw std::invalid_argument("ClassicalObservable: order does not match tensor rank");
  auto it = std::lower_bound(components_.begin(), components_.end(), order,
                             [](const ObservableComponent& c, int o) { return c.order < o; });
  if (it != components_.end() && it->order == order) {
    SymTensor sum = it->tensor.base();
    sum += tensor.base();
    it->tensor = HarmonicTensor::unchecked(std::move(sum));
  } else {
    components_.insert(it, ObservableComponent{order, tensor});
  }
}

ClassicalObservable classical_from_polynomial(const SymTensor& poly) {
  return classical_from_polynomials(std::span<const SymTensor>(&poly, 1));
}

ClassicalObservable classical_from_polynomials(std::span<const SymTensor> polys) {
  ClassicalObservable obs;
  for (const SymTensor& poly : polys) {
    if (poly.kind() != ScalarKind::real)
      throw std::invalid_argument("classical_from_polynomial: polynomial must be real");
    const std::vector<HarmonicTensor> parts = harmonic_components(poly);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      // The (r.r)^k factor is 1 on the unit sphere, so the component enters
      // unscaled at its own order.
      obs.add_component(poly.rank() - 2 * static_cast<int>(k), parts[k]);
    }
  }
  return obs;
}

Rational q_symbol_factor(int two_j, int order) {
  if (order < 0) throw std::invalid_argument("q_symbol_factor: negative order");
  if (order > two_j) return 0;
  return falling_product(two_j, order) / Rational(int_pow2(order));
}

Rational p_symbol_factor(int two_j, int order) {
  if (order < 0) throw std::invalid_argument("p_symbol_factor: negative order");
  if (order > two_j) return 0;
  Rational rising = 1;
  for (int j = two_j + 2; j <= two_j + order + 1; ++j) rising *= Rational(j);
  return rising / Rational(int_pow2(order));
}

ClassicalObservable to_symbol(const ClassicalObservable& obs, int two_j, SymbolKind kind) {
  if (obs.kind() != SymbolKind::classical)
    throw std::invalid_argument("to_symbol: input must be a classical observable");
  if (kind == SymbolKind::classical)
    throw std::invalid_argument("to_symbol: target must be Q or P");
  ClassicalObservable out;
  out.set_kind(kind);
  for (const ObservableComponent& c : obs.components()) {
    if (c.order > two_j) continue;  // both factors vanish beyond 2J
    const Rational factor = kind == SymbolKind::q_symbol ? q_symbol_factor(two_j, c.order)
                                                         : p_symbol_factor(two_j, c.order);
    SymTensor scaled = c.tensor.base();
    scaled *= factor.to_double();
    out.add_component(c.order, HarmonicTensor::unchecked(std::move(scaled)));
  }
  return out;
}

namespace {

void check_observable(const SpinState& psi, const ClassicalObservable& obs) {
  if (obs.kind() != SymbolKind::classical)
    throw std::invalid_argument("expectation: observable must be classical (symbols are derived internally)");
  if (obs.max_order() > psi.two_j())
    throw OrderExceedsSpinError("expectation: observable order " +
                                std::to_string(obs.max_order()) + " exceeds 2J = " +
                                std::to_string(psi.two_j()));
}

}  // namespace

double expectation_tensor(const SpinState& psi, const ClassicalObservable& obs, Exec exec) {
  check_observable(psi, obs);
  const int two_j = psi.two_j();
  const std::vector<HarmonicTensor> husimi_parts = husimi_harmonic_components(psi, exec);
  double sum = 0.0;
  for (const ObservableComponent& c : obs.components()) {
    const double beta = p_symbol_factor(two_j, c.order).to_double();
    sum += (two_j + 1) * beta *
           harmonic_inner_product(husimi_parts[c.order], c.tensor).real();
  }
  return sum;
}

namespace {

// Permanent via Ryser's formula with inclusion-exclusion over column subsets.
double permanent(const std::vector<std::vector<double>>& g) {
  const int n = static_cast<int>(g.size());
  if (n == 0) return 1.0;
  double total = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double rowprod = 1.0;
    for (int r = 0; r < n; ++r) {
      double rowsum = 0.0;
      for (int c = 0; c < n; ++c)
        if (mask & (1u << c)) rowsum += g[r][c];
      rowprod *= rowsum;
    }
    const int bits = __builtin_popcount(mask);
    total += ((n - bits) % 2 == 0 ? 1.0 : -1.0) * rowprod;
  }
  return total;
}

// Enumerates ways to choose `pairs` disjoint unordered pairs out of {0..n-1};
// fn(pair list, free list) is called once per matching.
void enumerate_matchings(int n, int pairs,
                         const std::function<void(const std::vector<std::pair<int, int>>&,
                                                  const std::vector<int>&)>& fn) {
  std::vector<std::pair<int, int>> chosen;
  std::vector<int> free_idx;
  std::vector<bool> used(n, false);
  auto recurse = [&](auto&& self, int remaining) -> void {
    int first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) {
      fn(chosen, free_idx);
      return;
    }
    used[first] = true;
    // first stays free
    free_idx.push_back(first);
    self(self, remaining);
    free_idx.pop_back();
    // or pairs with any later unused index
    if (remaining > 0) {
      for (int j = first + 1; j < n; ++j) {
        if (used[j]) continue;
        used[j] = true;
        chosen.emplace_back(first, j);
        self(self, remaining - 1);
        chosen.pop_back();
        used[j] = false;
      }
    }
    used[first] = false;
  };
  recurse(recurse, pairs);
}

double trace_contraction_pair_products(std::span<const Vec3> q, std::span<const Vec3> a,
                                       int pairs) {
  const int l = static_cast<int>(q.size());
  const int free_count = l - 2 * pairs;
  std::vector<std::vector<double>> gram(l, std::vector<double>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) gram[i][j] = dot(q[i], a[j]);

  double total = 0.0;
  enumerate_matchings(l, pairs, [&](const std::vector<std::pair<int, int>>& q_pairs,
                                    const std::vector<int>& q_free) {
    if (static_cast<int>(q_free.size()) != free_count) return;
    double q_prod = 1.0;
    for (const auto& [i, j] : q_pairs) q_prod *= dot(q[i], q[j]);
    enumerate_matchings(l, pairs, [&](const std::vector<std::pair<int, int>>& a_pairs,
                                      const std::vector<int>& a_free) {
      if (static_cast<int>(a_free.size()) != free_count) return;
      double a_prod = 1.0;
      for (const auto& [i, j] : a_pairs) a_prod *= dot(a[i], a[j]);
      std::vector<std::vector<double>> sub(free_count, std::vector<double>(free_count));
      for (int r = 0; r < free_count; ++r)
        for (int c = 0; c < free_count; ++c) sub[r][c] = gram[q_free[r]][a_free[c]];
      total += q_prod * a_prod * permanent(sub);
    });
  });

  // Multiplicity of each (matching, matching, bijection) class among the
  // (l!)^2 permutation pairs: (p! 2^p)^2 (l-2p)!.
  const double weight =
      std::pow(factorial(pairs) * std::pow(2.0, pairs), 2.0) *
      factorial(free_count) / std::pow(factorial(l), 2.0);
  return weight * total;
}

double trace_contraction_tensors(std::span<const Vec3> q, std::span<const Vec3> a, int pairs) {
  const SymTensor tq = from_vectors(q);
  const SymTensor ta = from_vectors(a);
  return full_contraction_scalar(trace(tq, pairs), trace(ta, pairs)).real();
}

}  // namespace

double skeleton_trace_contraction(std::span<const Vec3> q, std::span<const Vec3> a, int pairs) {
  if (q.size() != a.size())
    throw std::invalid_argument("skeleton_trace_contraction: vector counts differ");
  const int l = static_cast<int>(q.size());
  if (pairs < 0 || 2 * pairs > l)
    throw std::invalid_argument("skeleton_trace_contraction: bad pair count");
  if (l == 0) return 1.0;
  // The combinatorial sum grows as a double matching enumeration; beyond
  // order 8 the identical value is computed through polynomial traces.
  if (l <= 8) return trace_contraction_pair_products(q, a, pairs);
  return trace_contraction_tensors(q, a, pairs);
}

double expectation_skeleton(const SpinState& psi, const ClassicalObservable& obs, Exec exec) {
  check_observable(psi, obs);
  const int two_j = psi.two_j();
  const std::vector<HarmonicTensor> husimi_parts = husimi_harmonic_components(psi, exec);
  double sum = 0.0;
  for (const ObservableComponent& c : obs.components()) {
    const int l = c.order;
    const double beta = p_symbol_factor(two_j, l).to_double();
    if (l == 0) {
      sum += (two_j + 1) * beta * husimi_parts[0].base()[0].real() *
             c.tensor.base()[0].real();
      continue;
    }
    // Zero components contribute zero without a decomposition.
    const double husimi_mag = husimi_parts[l].base().max_abs_coeff();
    const double obs_mag = c.tensor.base().max_abs_coeff();
    if (husimi_mag <= 1e-13 || obs_mag == 0.0) continue;

    const Skeleton sq = sylvester_decompose(husimi_parts[l]);
    SymTensor scaled = c.tensor.base();
    scaled *= beta;
    const Skeleton sa = sylvester_decompose(HarmonicTensor::unchecked(std::move(scaled)));

    // Multipole vectors with |scale|^(1/l) absorbed into each axis; overall
    // signs multiply the order-l term.
    const double qmag = std::pow(sq.scale, 1.0 / l);
    const double amag = std::pow(sa.scale, 1.0 / l);
    std::vector<Vec3> qv(l), av(l);
    for (int i = 0; i < l; ++i) {
      qv[i] = qmag * sq.axes[i];
      av[i] = amag * sa.axes[i];
    }

    const LegendreCoeffs pl = legendre_coeffs(l);
    double order_sum = 0.0;
    for (int p = 0; p <= l / 2; ++p) {
      const double coeff = (pl.coeffs[p] / pl.coeffs[0]).to_double();
      order_sum += coeff * skeleton_trace_contraction(qv, av, p);
    }
    const double weight =
        (factorial_ratio(l, 0) / Rational(double_factorial(2 * l + 1))).to_double();
    sum += (two_j + 1) * weight * sq.sign * sa.sign * order_sum;
  }
  return sum;
}

SpinMatrix quantize_observable(const ClassicalObservable& obs, int two_j) {
  if (obs.kind() != SymbolKind::classical)
    throw std::invalid_argument("quantize_observable: observable must be classical");
  SpinMatrix out = SpinMatrix::Zero(two_j + 1, two_j + 1);
  for (const ObservableComponent& c : obs.components())
    out += quantize_symmetrized(c.tensor.base(), two_j);
  return out;
}

}  // namespace msm
