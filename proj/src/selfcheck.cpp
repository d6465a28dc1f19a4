#include "msm/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "msm/harmonic.hpp"
#include "msm/legendre.hpp"
#include "msm/multipole.hpp"
#include "msm/observable.hpp"
#include "msm/oracle.hpp"
#include "msm/spinstate.hpp"

namespace msm {

namespace {

using Rng = std::mt19937_64;
using Complex = std::complex<double>;

Vec3 random_unit(Rng& rng) {
  std::uniform_real_distribution<double> uz(-1.0, 1.0);
  std::uniform_real_distribution<double> uphi(0.0, 2.0 * std::numbers::pi);
  const double z = uz(rng);
  const double phi = uphi(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

SymTensor random_tensor(int rank, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymTensor t(rank, ScalarKind::real);
  for (int i = 0; i < t.size(); ++i) t[i] = u(rng);
  return t;
}

SpinState random_state(int two_j, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> amps(two_j + 1);
  for (Complex& a : amps) a = Complex{g(rng), g(rng)};
  return SpinState(two_j, std::move(amps));
}

Skeleton random_skeleton(int order, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Skeleton s;
  for (int i = 0; i < order; ++i) s.axes.push_back(random_unit(rng));
  s.scale = std::exp(u(rng));
  s.sign = u(rng) < 0.0 ? -1 : 1;
  return canonicalized(std::move(s));
}

// Tracks the worst error relative to its own tolerance; criteria may mix
// sub-checks with different pinned thresholds.
struct ErrorTracker {
  double margin = 0.0;
  double worst_err = 0.0;
  double worst_tol = 1.0;
  std::string detail;

  void record(double err, double tol, const std::string& label) {
    if (tol <= 0.0) throw std::logic_error("ErrorTracker: non-positive tolerance");
    if (err / tol >= margin) {
      margin = err / tol;
      worst_err = err;
      worst_tol = tol;
      detail = label;
    }
  }

  void finish(CheckResult& r) const {
    r.worst = worst_err;
    r.tolerance = worst_tol;
    r.passed = margin < 1.0;
    r.detail = r.passed ? "" : detail;
  }
};

// --- criterion bodies -------------------------------------------------------

CheckResult check_decomposition_round_trip(const CheckOptions& opt) {
  CheckResult r;
  r.id = 1;
  r.name = "canonical-decomposition round trip";
  Rng rng(opt.seed * 1000 + 1);
  ErrorTracker tracker;
  for (int rank = 2; rank <= 8; ++rank) {
    for (int trial = 0; trial < 100; ++trial) {
      const SymTensor a = random_tensor(rank, rng);
      const std::vector<HarmonicTensor> parts = harmonic_components(a);
      const SymTensor rebuilt = reconstruct(parts);
      tracker.record(max_abs_difference(a, rebuilt), 1e-12,
                     "reconstruction mismatch at rank " + std::to_string(rank));
      for (const HarmonicTensor& part : parts) {
        if (part.order() < 2) continue;
        tracker.record(trace(part.base(), 1).max_abs_coeff(), 1e-12,
                       "non-traceless component at rank " + std::to_string(rank));
      }
    }
  }
  tracker.finish(r);
  return r;
}

CheckResult check_sphere_integral_identities(const CheckOptions& opt) {
  CheckResult r;
  r.id = 2;
  r.name = "sphere-integral pairing identities";
  Rng rng(opt.seed * 1000 + 2);
  ErrorTracker tracker;
  for (int n : {2, 4, 6, 8}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Vec3> vs(n);
      for (Vec3& v : vs) v = random_unit(rng);

      const double by_pairings = sphere_average_product(vs);
      const double by_quadrature =
          sphere_average(n, default_exec(), [&](const Vec3& dir) {
            double prod = 1.0;
            for (const Vec3& v : vs) prod *= dot(v, dir);
            return prod;
          });
      // Exact route: expand into monomials and integrate each with the
      // closed-form rational value.
      const SymTensor poly = from_vectors(vs);
      double exact = 0.0;
      for (int i = 0; i < poly.size(); ++i) {
        const MultiIndex mi = SymTensor::index_at(n, i);
        if (mi.p % 2 != 0 || mi.q % 2 != 0 || mi.s % 2 != 0) continue;
        exact += poly[i].real() *
                 monomial_sphere_integral(mi.p / 2, mi.q / 2, mi.s / 2).to_double();
      }

      const double scale = std::max({1.0, std::abs(by_pairings), std::abs(exact)});
      const double err = std::max(std::abs(by_pairings - by_quadrature),
                                  std::abs(by_pairings - exact)) /
                         scale;
      tracker.record(err, 1e-10, "pairing identity mismatch at n = " + std::to_string(n));
    }
  }
  tracker.finish(r);
  return r;
}

CheckResult check_inner_product_triple(const CheckOptions& opt) {
  CheckResult r;
  r.id = 3;
  r.name = "harmonic inner-product triple equality";
  Rng rng(opt.seed * 1000 + 3);
  ErrorTracker tracker;
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const SymTensor a = random_tensor(n, rng);
      const SymTensor b = random_tensor(n, rng);
      const HarmonicTensor ha = harmonic_components(a).front();
      const HarmonicTensor hb = harmonic_components(b).front();

      const double by_quadrature =
          sphere_average(2 * n, default_exec(), [&](const Vec3& dir) {
            return evaluate(ha.base(), dir).real() * evaluate(hb.base(), dir).real();
          });
      const double by_contraction = harmonic_inner_product(ha, hb).real();
      const double weight =
          (factorial_ratio(n, 0) / Rational(double_factorial(2 * n + 1))).to_double();
      const double by_traces = weight * harmonic_contraction_via_traces(a, b).real();

      const double scale = std::max(1.0, std::abs(by_contraction));
      const double err = std::max(std::abs(by_quadrature - by_contraction),
                                  std::abs(by_traces - by_contraction)) /
                         scale;
      tracker.record(err, 1e-10, "triple equality mismatch at n = " + std::to_string(n));
    }
  }
  tracker.finish(r);
  return r;
}

CheckResult check_sylvester_round_trip(const CheckOptions& opt) {
  CheckResult r;
  r.id = 4;
  r.name = "multipole-vector (Sylvester) round trip";
  Rng rng(opt.seed * 1000 + 4);
  ErrorTracker tracker;
  for (int order = 1; order <= 6; ++order) {
    for (int trial = 0; trial < 100; ++trial) {
      const Skeleton original = random_skeleton(order, rng);
      const HarmonicTensor h = skeleton_to_harmonic(original);
      const Skeleton recovered = sylvester_decompose(h);

      // Greedy up-to-sign axis matching.
      std::vector<bool> used(order, false);
      double worst_angle = 0.0;
      for (const Vec3& axis : original.axes) {
        int best = -1;
        double best_angle = 0.0;
        for (int j = 0; j < order; ++j) {
          if (used[j]) continue;
          // Up to sign: the two representatives of an axis are equivalent.
          const Vec3 other = dot(axis, recovered.axes[j]) < 0.0 ? -recovered.axes[j]
                                                                : recovered.axes[j];
          const double angle = angle_between(axis, other);
          if (best < 0 || angle < best_angle) {
            best = j;
            best_angle = angle;
          }
        }
        used[best] = true;
        worst_angle = std::max(worst_angle, best_angle);
      }
      tracker.record(worst_angle, 1e-6, "axis mismatch at order " + std::to_string(order));
      tracker.record(std::abs(recovered.scale - original.scale) / original.scale, 1e-8,
                     "scale mismatch at order " + std::to_string(order));
      tracker.record(sylvester_residual(h, recovered), 1e-8,
                     "round-trip residual at order " + std::to_string(order));
    }
  }
  tracker.finish(r);
  return r;
}

CheckResult check_maxwell_ratio(const CheckOptions& opt) {
  CheckResult r;
  r.id = 5;
  r.name = "Maxwell potential / irregular harmonic ratio";
  Rng rng(opt.seed * 1000 + 5);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  ErrorTracker tracker;
  for (int order = 0; order <= 6; ++order) {
    const double expected =
        double_factorial(2 * order - 1) / factorial_ratio(order, 0).to_double();
    for (int trial = 0; trial < 20; ++trial) {
      const Skeleton s = random_skeleton(order, rng);
      const HarmonicTensor h = skeleton_to_harmonic(s);
      const Vec3 point = radius(rng) * random_unit(rng);
      const double irregular = eval_irregular(h, point).real();
      if (std::abs(irregular) < 1e-12) continue;  // zero crossing of the harmonic
      const double ratio = maxwell_potential(s, point) / irregular;
      tracker.record(std::abs(ratio / expected - 1.0), 1e-10,
                     "ratio drift at order " + std::to_string(order));
    }
  }
  tracker.finish(r);
  return r;
}

CheckResult check_overlap_vs_oracle(const CheckOptions& opt) {
  CheckResult r;
  r.id = 6;
  r.name = "coherent overlap: triangle phase vs amplitudes";
  Rng rng(opt.seed * 1000 + 6);
  ErrorTracker tracker;
  for (int two_j : {1, 2, 3, 4, 5, 10}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Vec3 n1 = random_unit(rng);
      const Vec3 n2 = random_unit(rng);
      const Complex geometric = overlap_geometric(two_j, n1, n2);
      const Complex amplitudes =
          inner_product(coherent_state(two_j, n1), coherent_state(two_j, n2));
      tracker.record(std::abs(geometric - amplitudes), 1e-9,
                     "overlap mismatch at 2J = " + std::to_string(two_j));
    }
  }
  tracker.finish(r);
  return r;
}

CheckResult check_resolution_of_unity(const CheckOptions&) {
  CheckResult r;
  r.id = 7;
  r.name = "resolution of unity";
  ErrorTracker tracker;
  for (int two_j = 0; two_j <= 6; ++two_j) {
    tracker.record(resolution_of_unity_deviation(two_j, std::max(4, 2 * two_j)), 1e-10,
                   "identity deviation at 2J = " + std::to_string(two_j));
  }
  tracker.finish(r);
  return r;
}

CheckResult check_expectation_routes(const CheckOptions& opt) {
  CheckResult r;
  r.id = 8;
  r.name = "expectation three-route equality";
  Rng rng(opt.seed * 1000 + 8);
  ErrorTracker tracker;

  // Closed forms, exact in rationals: order-1 Q factor is J, P factor J + 1.
  for (int two_j = 1; two_j <= 12; ++two_j) {
    const bool exact = q_symbol_factor(two_j, 1) == Rational(two_j, 2) &&
                       p_symbol_factor(two_j, 1) == Rational(two_j + 2, 2);
    tracker.record(exact ? 0.0 : 1.0, 1e-30,
                   "closed-form symbol factor mismatch at 2J = " + std::to_string(two_j));
  }

  // Q-symbol consistency: projecting the coherent expectation of a quantized
  // harmonic component recovers the Q factor times the component.
  for (int two_j : {1, 2, 3, 4}) {
    for (int order = 1; order <= std::min(two_j, 4); ++order) {
      const HarmonicTensor h = harmonic_components(random_tensor(order, rng)).front();
      const SpinMatrix quantized = quantize_symmetrized(h.base(), two_j);
      const HarmonicTensor projected = project_spherical_function(
          [&](const Vec3& n) {
            return expectation_value(coherent_state(two_j, n), quantized);
          },
          order, 2 * two_j);
      const double alpha =
          q_symbol_factor(two_j, order).to_double() * (1.0 + opt.q_symbol_fault);
      SymTensor expected = h.base();
      expected *= alpha;
      tracker.record(
          max_abs_difference(projected.base(), expected) /
              std::max(1.0, expected.max_abs_coeff()),
          1e-9,
          "Q-symbol projection mismatch at 2J = " + std::to_string(two_j) + ", order " +
              std::to_string(order));
    }
  }

  // Route equality on random states and observables.
  for (int two_j : {1, 2, 3, 4, 6}) {
    for (int trial = 0; trial < 50; ++trial) {
      const SpinState psi = random_state(two_j, rng);
      std::uniform_int_distribution<int> deg(0, std::min(two_j, 4));
      const ClassicalObservable obs = classical_from_polynomial(random_tensor(deg(rng), rng));

      const double by_tensor = expectation_tensor(psi, obs);
      const double by_skeleton = expectation_skeleton(psi, obs);
      const double by_matrix = expectation_value(psi, quantize_observable(obs, two_j));
      const double err =
          std::max({std::abs(by_tensor - by_skeleton), std::abs(by_tensor - by_matrix),
                    std::abs(by_skeleton - by_matrix)});
      tracker.record(err, 1e-8, "route disagreement at 2J = " + std::to_string(two_j));
    }
  }
  tracker.finish(r);
  return r;
}

CheckResult check_sectorial_vanishing(const CheckOptions& opt) {
  CheckResult r;
  r.id = 9;
  r.name = "sectorial interaction vanishing on multipole axes";
  Rng rng(opt.seed * 1000 + 9);
  std::uniform_real_distribution<double> uphase(0.0, 2.0 * std::numbers::pi);
  ErrorTracker tracker;
  for (int order = 1; order <= 5; ++order) {
    for (int trial = 0; trial < 10; ++trial) {
      const Skeleton s = random_skeleton(order, rng);
      const HarmonicTensor h = skeleton_to_harmonic(s);
      for (const Vec3& axis : s.axes) {
        const Vec3 a = any_perpendicular(axis);
        const Vec3 b = cross(axis, a);  // a x b = axis
        for (int k = 0; k < 8; ++k) {
          const double energy =
              interaction_energy(h, real_sectorial(a, b, uphase(rng), order));
          tracker.record(std::abs(energy), 1e-10,
                         "nonvanishing interaction at order " + std::to_string(order));
        }
      }
    }
  }
  tracker.finish(r);
  return r;
}

CheckResult check_majorana(const CheckOptions& opt) {
  CheckResult r;
  r.id = 10;
  r.name = "Majorana round trip and rotational covariance";
  Rng rng(opt.seed * 1000 + 10);
  std::uniform_real_distribution<double> uangle(0.0, std::numbers::pi);
  ErrorTracker tracker;
  for (int two_j = 1; two_j <= 10; ++two_j) {
    for (int trial = 0; trial < 20; ++trial) {
      const SpinState psi = random_state(two_j, rng);
      const SpinState rebuilt = state_from_stars(majorana_stars(psi));
      tracker.record(1.0 - std::abs(inner_product(psi, rebuilt)), 1e-10,
                     "round-trip infidelity at 2J = " + std::to_string(two_j));
    }
    for (int trial = 0; trial < 10; ++trial) {
      const SpinState psi = random_state(two_j, rng);
      const Vec3 axis = random_unit(rng);
      const double angle = uangle(rng);
      const SpinState rotated = apply_operator(rotation_operator(two_j, axis, angle), psi);
      const Constellation direct = majorana_stars(rotated);
      const Mat3 rot = rotation_about(axis, angle);
      std::vector<Vec3> expected;
      expected.reserve(two_j);
      for (const Vec3& star : majorana_stars(psi).stars) expected.push_back(rot(star));

      std::vector<bool> used(two_j, false);
      double worst_angle = 0.0;
      for (const Vec3& star : direct.stars) {
        int best = -1;
        double best_angle = 0.0;
        for (int j = 0; j < two_j; ++j) {
          if (used[j]) continue;
          const double angle = angle_between(star, expected[j]);
          if (best < 0 || angle < best_angle) {
            best = j;
            best_angle = angle;
          }
        }
        used[best] = true;
        worst_angle = std::max(worst_angle, best_angle);
      }
      tracker.record(worst_angle, 1e-8, "covariance mismatch at 2J = " + std::to_string(two_j));
    }
  }
  tracker.finish(r);
  return r;
}

using CheckFn = CheckResult (*)(const CheckOptions&);

constexpr CheckFn kChecks[] = {
    check_decomposition_round_trip, check_sphere_integral_identities,
    check_inner_product_triple,     check_sylvester_round_trip,
    check_maxwell_ratio,            check_overlap_vs_oracle,
    check_resolution_of_unity,      check_expectation_routes,
    check_sectorial_vanishing,      check_majorana,
};

}  // namespace

CheckResult run_acceptance_check(int id, const CheckOptions& options) {
  if (id < 1 || id > static_cast<int>(std::size(kChecks)))
    throw std::invalid_argument("run_acceptance_check: unknown criterion id");
  const auto start = std::chrono::steady_clock::now();
  CheckResult result = kChecks[id - 1](options);
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<CheckResult> run_acceptance_checks(const CheckOptions& options) {
  std::vector<CheckResult> results;
  for (int id = 1; id <= static_cast<int>(std::size(kChecks)); ++id)
    results.push_back(run_acceptance_check(id, options));
  return results;
}

int print_report(std::ostream& os, const std::vector<CheckResult>& results, bool include_timing) {
  int failures = 0;
  for (const CheckResult& r : results) {
    std::ostringstream line;
    line << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " (err "
         << std::scientific << std::setprecision(3) << r.worst << ", tol " << r.tolerance << ")";
    if (!r.passed && !r.detail.empty()) line << " -- " << r.detail;
    if (include_timing) line << " [" << std::fixed << std::setprecision(2) << r.seconds << " s]";
    os << line.str() << "\n";
    if (!r.passed) ++failures;
  }
  return failures;
}

}  // namespace msm
