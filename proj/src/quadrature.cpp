#include "msm/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace msm {

Exec default_exec() {
#ifdef _OPENMP
  return Exec::parallel;
#else
  return Exec::serial;
#endif
}

namespace {

GaussLegendre compute_gauss_legendre(int points) {
  if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  GaussLegendre rule;
  rule.nodes.assign(points, 0.0);
  rule.weights.assign(points, 0.0);
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-angle initial guess for the i-th largest root, then Newton on
    // the three-term recurrence.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = points * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[points - 1 - i] = x;
    rule.nodes[i] = -x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[points - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (points % 2 == 1) {
    rule.nodes[points / 2] = 0.0;  // enforce the exact central root
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int points) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::scoped_lock lock(mutex);
  auto& entry = cache[points];
  if (!entry) entry = std::make_unique<GaussLegendre>(compute_gauss_legendre(points));
  return *entry;
}

const std::vector<SphereNode>& sphere_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("sphere_rule: negative degree");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<std::vector<SphereNode>>> cache;
  std::scoped_lock lock(mutex);
  auto& entry = cache[degree];
  if (!entry) {
    const int polar = degree / 2 + 1;
    const int azimuthal = degree + 1;
    const GaussLegendre& gl = gauss_legendre(polar);
    auto nodes = std::make_unique<std::vector<SphereNode>>();
    nodes->reserve(static_cast<std::size_t>(polar) * azimuthal);
    for (int i = 0; i < polar; ++i) {
      const double ct = gl.nodes[i];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      const double w = gl.weights[i] / (2.0 * azimuthal);
      for (int j = 0; j < azimuthal; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / azimuthal;
        nodes->push_back({{st * std::cos(phi), st * std::sin(phi), ct}, w});
      }
    }
    entry = std::move(nodes);
  }
  return *entry;
}

void parallel_for(std::size_t count, Exec exec, const std::function<void(std::size_t)>& fn) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < count; ++i) fn(i);
}

void accumulate_nodes(std::size_t node_count, std::size_t width, Exec exec,
                      const std::function<void(std::size_t, std::span<double>)>& node_fn,
                      std::span<double> out) {
  if (out.size() != width) throw std::invalid_argument("accumulate_nodes: bad output width");
  std::fill(out.begin(), out.end(), 0.0);
#ifdef _OPENMP
  if (exec == Exec::parallel) {
    std::vector<double> slab(node_count * width, 0.0);
    const auto n = static_cast<std::int64_t>(node_count);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      node_fn(static_cast<std::size_t>(i), std::span<double>(slab.data() + i * width, width));
    for (std::size_t i = 0; i < node_count; ++i)
      for (std::size_t w = 0; w < width; ++w) out[w] += slab[i * width + w];
    return;
  }
#else
  (void)exec;
#endif
  // Serial reference: same node order, same per-element addition sequence.
  std::vector<double> scratch(width);
  for (std::size_t i = 0; i < node_count; ++i) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    node_fn(i, scratch);
    for (std::size_t w = 0; w < width; ++w) out[w] += scratch[w];
  }
}

double sphere_average(int degree, Exec exec, const std::function<double(const Vec3&)>& f) {
  const std::vector<SphereNode>& nodes = sphere_rule(degree);
  double result = 0.0;
  accumulate_nodes(
      nodes.size(), 1, exec,
      [&](std::size_t i, std::span<double> slot) { slot[0] = nodes[i].weight * f(nodes[i].dir); },
      std::span<double>(&result, 1));
  return result;
}

}  // namespace msm
