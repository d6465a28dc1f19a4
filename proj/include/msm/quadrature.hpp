#pragma once

#include <functional>
#include <span>
#include <vector>

#include "msm/geometry.hpp"

namespace msm {

// Execution policy for the data-parallel kernels. Both policies produce
// bit-identical results: parallel runs compute per-node contributions into
// preassigned slots and reduce them in node order.
enum class Exec { serial, parallel };

Exec default_exec();

struct GaussLegendre {
  std::vector<double> nodes;    // ascending, on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// Cached Gauss-Legendre rule with `points` nodes (exact through degree 2*points-1).
const GaussLegendre& gauss_legendre(int points);

struct SphereNode {
  Vec3 dir;
  double weight;  // normalized: weights sum to 1, so sums approximate (1/4pi) * integral
};

// Product rule (Gauss-Legendre in cos theta x uniform trapezoid in phi) exact
// for polynomials in the direction vector of total degree <= degree.
const std::vector<SphereNode>& sphere_rule(int degree);

// Runs fn(i) for i in [0, count).
void parallel_for(std::size_t count, Exec exec, const std::function<void(std::size_t)>& fn);

// Accumulation kernel: node_fn(i, slot) writes node i's contribution (width
// doubles) into slot; contributions are summed into out in ascending node
// order under either policy. The serial path is the reference implementation.
void accumulate_nodes(std::size_t node_count, std::size_t width, Exec exec,
                      const std::function<void(std::size_t, std::span<double>)>& node_fn,
                      std::span<double> out);

// Convenience: (1/4pi) * integral over the sphere of a scalar function,
// quadrature exact for polynomial integrands of total degree <= degree.
double sphere_average(int degree, Exec exec, const std::function<double(const Vec3&)>& f);

}  // namespace msm
