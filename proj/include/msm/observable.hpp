#pragma once

#include <span>
#include <vector>

#include "msm/multipole.hpp"
#include "msm/oracle.hpp"
#include "msm/spinstate.hpp"

namespace msm {

enum class SymbolKind { classical, q_symbol, p_symbol };

struct ObservableComponent {
  int order = 0;
  HarmonicTensor tensor;
};

// Classical observable on the unit sphere: one real harmonic tensor per
// order, the harmonic components of the classical symbol.
class ClassicalObservable {
 public:
  SymbolKind kind() const { return kind_; }
  void set_kind(SymbolKind k) { kind_ = k; }
  const std::vector<ObservableComponent>& components() const { return components_; }
  int max_order() const;

  // Merges into the existing component of equal order, if any.
  void add_component(int order, const HarmonicTensor& tensor);

 private:
  SymbolKind kind_ = SymbolKind::classical;
  std::vector<ObservableComponent> components_;  // ascending distinct orders
};

// Canonical decomposition of a real polynomial with every (r.r)^k factor
// restricted to 1 (the classical symbol lives on the unit sphere).
ClassicalObservable classical_from_polynomial(const SymTensor& poly);
// Sum of mixed-degree pieces; components of equal order are merged.
ClassicalObservable classical_from_polynomials(std::span<const SymTensor> polys);

// Exact per-order scale factors between the classical symbol and the
// coherent-state Q and P symbols; both vanish for order > 2J.
Rational q_symbol_factor(int two_j, int order);
Rational p_symbol_factor(int two_j, int order);

// Per-order rescaling of a classical observable into its Q or P symbol;
// orders beyond 2J are dropped.
ClassicalObservable to_symbol(const ClassicalObservable& obs, int two_j, SymbolKind kind);

// Expectation value through harmonic inner products of the Husimi components
// against the P symbol: (2J+1) sum_l <Q_l, beta_l A_l>.
double expectation_tensor(const SpinState& psi, const ClassicalObservable& obs,
                          Exec exec = default_exec());

// Expectation value through multipole vectors: each component and each
// Husimi harmonic is decomposed into its skeleton, and the trace-pair sums
// reduce to products of dot products of multipole-vector pairs.
double expectation_skeleton(const SpinState& psi, const ClassicalObservable& obs,
                            Exec exec = default_exec());

// Matrix-mechanics bridge: symmetrized quantization of every component.
SpinMatrix quantize_observable(const ClassicalObservable& obs, int two_j);

// Contraction of the p-fold traces of the two skeleton tensors prod q_i and
// prod a_i, evaluated as a sum over pair matchings and free-index bijections
// of products of dot products (pure pair-product arithmetic for order <= 8,
// tensor-trace arithmetic above).
double skeleton_trace_contraction(std::span<const Vec3> q, std::span<const Vec3> a, int pairs);

}  // namespace msm
