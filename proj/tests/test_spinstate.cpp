#include <doctest.h>

#include <random>

#include "msm/config.hpp"
#include "msm/oracle.hpp"
#include "msm/spinstate.hpp"

namespace {

using msm::Constellation;
using msm::SpinState;
using msm::Vec3;
using Complex = std::complex<double>;

std::mt19937_64 rng(31415);

Vec3 random_unit() {
  std::uniform_real_distribution<double> uz(-1.0, 1.0);
  std::uniform_real_distribution<double> uphi(0.0, 2.0 * std::numbers::pi);
  const double z = uz(rng);
  const double phi = uphi(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

SpinState random_state(int two_j) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> amps(two_j + 1);
  for (Complex& a : amps) a = Complex{g(rng), g(rng)};
  return SpinState(two_j, std::move(amps));
}

}  // namespace

TEST_CASE("spin state normalization and the zero state") {
  SpinState s(2, {Complex{3.0, 0.0}, Complex{0.0, 4.0}, Complex{0.0, 0.0}});
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(SpinState(1, {Complex{}, Complex{}}), msm::ZeroStateError);
  CHECK_THROWS_AS(SpinState(1, {Complex{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("coherent state at the poles") {
  const SpinState north = msm::coherent_state(4, msm::kZAxis);
  CHECK(std::abs(north.amp(0) - Complex{1.0, 0.0}) < 1e-15);
  for (int i = 1; i < north.dim(); ++i) CHECK(std::abs(north.amp(i)) == 0.0);

  const SpinState south = msm::coherent_state(4, -msm::kZAxis);
  CHECK(std::abs(south.amp(4)) == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i < 4; ++i) CHECK(std::abs(south.amp(i)) == 0.0);
}

TEST_CASE("coherent state is the maximal eigenvector of J.n") {
  for (int two_j : {1, 2, 3, 7, 10}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Vec3 n = random_unit();
      const SpinState coh = msm::coherent_state(two_j, n);
      const msm::AngularMomentum ops = msm::angular_momentum_matrices(two_j);
      const msm::SpinMatrix jn = n.x * ops.jx + n.y * ops.jy + n.z * ops.jz;
      Eigen::VectorXcd v(coh.dim());
      for (int i = 0; i < coh.dim(); ++i) v(i) = coh.amp(i);
      const double residual = (jn * v - 0.5 * two_j * v).cwiseAbs().maxCoeff();
      CHECK(residual < 1e-12);
    }
  }
}

TEST_CASE("spherical triangle area conventions") {
  CHECK(msm::spherical_triangle_area(msm::kZAxis, msm::kZAxis, random_unit()) == 0.0);
  // Octant orientation frozen by the overlap regression below.
  CHECK(msm::spherical_triangle_area(msm::kZAxis, msm::kXAxis, msm::kYAxis) ==
        doctest::Approx(0.5 * std::numbers::pi).epsilon(1e-14));
  CHECK(msm::spherical_triangle_area(msm::kZAxis, msm::kYAxis, msm::kXAxis) ==
        doctest::Approx(-0.5 * std::numbers::pi).epsilon(1e-14));

  const Vec3 a = random_unit(), b = random_unit(), c = random_unit();
  const double area = msm::spherical_triangle_area(a, b, c);
  CHECK(msm::spherical_triangle_area(b, c, a) == doctest::Approx(area).epsilon(1e-12));
  CHECK(msm::spherical_triangle_area(b, a, c) == doctest::Approx(-area).epsilon(1e-12));
  CHECK_THROWS_AS(msm::spherical_triangle_area(a, -a, b), std::domain_error);
}

TEST_CASE("geometric overlap matches the amplitude inner product") {
  CHECK(msm::overlap_geometric(5, msm::kZAxis, msm::kZAxis) == Complex{1.0, 0.0});
  CHECK(msm::overlap_geometric(5, msm::kZAxis, -msm::kZAxis) == Complex{0.0, 0.0});
  CHECK(std::abs(msm::overlap_geometric(1, msm::kZAxis, msm::kXAxis)) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

  for (int two_j : {1, 2, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Vec3 n1 = random_unit(), n2 = random_unit();
      const Complex geo = msm::overlap_geometric(two_j, n1, n2);
      const Complex amp =
          msm::inner_product(msm::coherent_state(two_j, n1), msm::coherent_state(two_j, n2));
      CHECK(std::abs(geo - amp) < 1e-12);
      // Magnitude alone: ((1 + n1.n2)/2)^(2J) as a squared modulus.
      CHECK(std::norm(amp) ==
            doctest::Approx(std::pow(0.5 * (1.0 + dot(n1, n2)), two_j)).epsilon(1e-11));
    }
  }
}

TEST_CASE("husimi function of a coherent state") {
  for (int two_j : {1, 3}) {
    const SpinState coh = msm::coherent_state(two_j, msm::kZAxis);
    for (int trial = 0; trial < 10; ++trial) {
      const Vec3 n = random_unit();
      CHECK(msm::husimi(coh, n) ==
            doctest::Approx(std::pow(0.5 * (1.0 + n.z), two_j)).epsilon(1e-12));
    }
  }

  // Normalization: (2J+1)/4pi * integral of Q equals 1.
  for (int two_j : {1, 2, 6}) {
    const SpinState psi = random_state(two_j);
    const double avg = msm::sphere_average(2 * two_j, msm::Exec::serial,
                                           [&](const Vec3& n) { return msm::husimi(psi, n); });
    CHECK((two_j + 1) * avg == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("majorana stars of the catalog states") {
  const Constellation top = msm::majorana_stars(msm::coherent_state(6, msm::kZAxis));
  REQUIRE(top.stars.size() == 6);
  for (const Vec3& s : top.stars) CHECK(msm::angle_between(s, msm::kZAxis) < 1e-12);

  const SpinState m0(2, {Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0}});
  const Constellation pair = msm::majorana_stars(m0);
  REQUIRE(pair.stars.size() == 2);
  const double z0 = pair.stars[0].z, z1 = pair.stars[1].z;
  CHECK(std::max(z0, z1) == doctest::Approx(1.0));
  CHECK(std::min(z0, z1) == doctest::Approx(-1.0));

  // A coherent state carries one 2J-fold degenerate star; the root cluster
  // scatters as eps^(1/2J) around it while its mean stays put.
  for (int two_j : {1, 4}) {
    const Vec3 n = random_unit();
    const Constellation c = msm::majorana_stars(msm::coherent_state(two_j, n));
    Vec3 mean{};
    for (const Vec3& s : c.stars) {
      CHECK(msm::angle_between(s, n) < 1e-3);
      mean = mean + s;
    }
    CHECK(msm::angle_between(msm::normalized(mean), n) < 1e-4);
    // The Husimi function vanishes at the antipode of every star.
    CHECK(msm::husimi(msm::coherent_state(two_j, n), -n) < 1e-12);
  }
}

TEST_CASE("state_from_stars inverts majorana_stars") {
  Constellation all_up;
  all_up.two_j = 5;
  all_up.stars.assign(5, msm::kZAxis);
  const SpinState top = msm::state_from_stars(all_up);
  CHECK(std::abs(top.amp(0)) == doctest::Approx(1.0).epsilon(1e-14));

  Constellation pair;
  pair.two_j = 2;
  pair.stars = {msm::kZAxis, -msm::kZAxis};
  const SpinState mid = msm::state_from_stars(pair);
  CHECK(std::abs(mid.amp(1)) == doctest::Approx(1.0).epsilon(1e-14));

  for (int two_j = 1; two_j <= 10; ++two_j) {
    const SpinState psi = random_state(two_j);
    const SpinState rebuilt = msm::state_from_stars(msm::majorana_stars(psi));
    CHECK(std::abs(msm::inner_product(psi, rebuilt)) > 1.0 - 1e-10);
  }

  Constellation wrong;
  wrong.two_j = 3;
  wrong.stars = {msm::kZAxis};
  CHECK_THROWS_AS(msm::state_from_stars(wrong), std::invalid_argument);
}

TEST_CASE("husimi harmonic components") {
  for (int two_j : {1, 2, 4}) {
    const SpinState psi = random_state(two_j);
    const std::vector<msm::HarmonicTensor> parts = msm::husimi_harmonic_components(psi);
    REQUIRE(static_cast<int>(parts.size()) == two_j + 1);
    // Monopole part carries the normalization.
    CHECK(parts[0].base()[0].real() == doctest::Approx(1.0 / (two_j + 1)).epsilon(1e-12));
    // The components reassemble the Husimi function on the sphere.
    for (int trial = 0; trial < 10; ++trial) {
      const Vec3 n = random_unit();
      double sum = 0.0;
      for (const msm::HarmonicTensor& part : parts)
        sum += msm::eval_spherical(part, n).real();
      CHECK(std::abs(sum - msm::husimi(psi, n)) < 1e-10);
    }
  }

  // Coherent state at z, J = 1/2: dipole component z/2.
  const std::vector<msm::HarmonicTensor> parts =
      msm::husimi_harmonic_components(msm::coherent_state(1, msm::kZAxis));
  msm::SymTensor expected = msm::from_vectors({msm::kZAxis});
  expected *= 0.5;
  CHECK(msm::max_abs_difference(parts[1].base(), expected) < 1e-13);
}

TEST_CASE("stars transform covariantly under rotations") {
  std::uniform_real_distribution<double> uangle(0.0, std::numbers::pi);
  for (int two_j : {2, 5}) {
    for (int trial = 0; trial < 3; ++trial) {
      const SpinState psi = random_state(two_j);
      const Vec3 axis = random_unit();
      const double angle = uangle(rng);
      const SpinState rotated =
          msm::apply_operator(msm::rotation_operator(two_j, axis, angle), psi);
      const msm::Mat3 rot = msm::rotation_about(axis, angle);
      std::vector<Vec3> expected;
      for (const Vec3& s : msm::majorana_stars(psi).stars) expected.push_back(rot(s));
      std::vector<bool> used(two_j, false);
      for (const Vec3& star : msm::majorana_stars(rotated).stars) {
        int best = -1;
        double best_angle = 0.0;
        for (int j = 0; j < two_j; ++j) {
          if (used[j]) continue;
          const double a = msm::angle_between(star, expected[j]);
          if (best < 0 || a < best_angle) {
            best = j;
            best_angle = a;
          }
        }
        used[best] = true;
        CHECK(best_angle < 1e-8);
      }
    }
  }
}
