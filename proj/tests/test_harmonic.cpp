#include <doctest.h>

#include <random>

#include "msm/config.hpp"
#include "msm/harmonic.hpp"

namespace {

using msm::HarmonicTensor;
using msm::Rational;
using msm::SymTensor;
using msm::Vec3;

std::mt19937_64 rng(777);

Vec3 random_unit() {
  std::uniform_real_distribution<double> uz(-1.0, 1.0);
  std::uniform_real_distribution<double> uphi(0.0, 2.0 * std::numbers::pi);
  const double z = uz(rng);
  const double phi = uphi(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

SymTensor random_tensor(int rank) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymTensor t(rank, msm::ScalarKind::real);
  for (int i = 0; i < t.size(); ++i) t[i] = u(rng);
  return t;
}

SymTensor zonal_quadrupole() {
  SymTensor t = msm::from_vectors({msm::kZAxis, msm::kZAxis});
  SymTensor d = msm::delta_power(1);
  d *= -1.0 / 3.0;
  t += d;
  return t;
}

}  // namespace

TEST_CASE("harmonic components of a squared vector") {
  const Vec3 b{0.3, -1.1, 0.7};
  const SymTensor bb = msm::from_vectors({b, b});
  const std::vector<HarmonicTensor> parts = msm::harmonic_components(bb);
  REQUIRE(parts.size() == 2);

  SymTensor expected2 = bb;
  SymTensor d = msm::delta_power(1);
  d *= -dot(b, b) / 3.0;
  expected2 += d;
  CHECK(msm::max_abs_difference(parts[0].base(), expected2) < 1e-15);
  CHECK(parts[1].base()[0].real() == doctest::Approx(dot(b, b) / 3.0).epsilon(1e-15));
}

TEST_CASE("harmonic decomposition is idempotent on traceless input") {
  const HarmonicTensor h = msm::harmonic_components(random_tensor(4)).front();
  const std::vector<HarmonicTensor> parts = msm::harmonic_components(h.base());
  CHECK(msm::max_abs_difference(parts[0].base(), h.base()) < 1e-13);
  for (std::size_t k = 1; k < parts.size(); ++k)
    CHECK(parts[k].base().max_abs_coeff() < 1e-13);
}

TEST_CASE("delta is pure trace") {
  const std::vector<HarmonicTensor> parts = msm::harmonic_components(msm::delta_power(1));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].base().max_abs_coeff() < 1e-15);
  CHECK(parts[1].base()[0].real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reconstruct inverts the decomposition") {
  for (int rank = 0; rank <= 8; ++rank) {
    for (int trial = 0; trial < (rank <= 4 ? 20 : 5); ++trial) {
      const SymTensor a = random_tensor(rank);
      const std::vector<HarmonicTensor> parts = msm::harmonic_components(a);
      CHECK(msm::max_abs_difference(msm::reconstruct(parts), a) < 1e-12);
      for (const HarmonicTensor& part : parts)
        CHECK(msm::trace_deviation(part.base()) < 1e-12);
    }
  }

  // [H, 0] rebuilds H; [0, 1] rebuilds delta.
  const HarmonicTensor h = msm::harmonic_components(random_tensor(2)).front();
  SymTensor zero0(0, msm::ScalarKind::real);
  const std::array<HarmonicTensor, 2> just_h{h, HarmonicTensor::unchecked(zero0)};
  CHECK(msm::max_abs_difference(msm::reconstruct(just_h), h.base()) == 0.0);

  SymTensor one0(0, msm::ScalarKind::real);
  one0[0] = 1.0;
  SymTensor zero2(2, msm::ScalarKind::real);
  const std::array<HarmonicTensor, 2> just_trace{HarmonicTensor::unchecked(zero2),
                                                 HarmonicTensor::unchecked(one0)};
  CHECK(msm::max_abs_difference(msm::reconstruct(just_trace), msm::delta_power(1)) == 0.0);

  const std::array<HarmonicTensor, 2> bad{h, h};
  CHECK_THROWS_AS(msm::reconstruct(bad), std::invalid_argument);
}

TEST_CASE("HarmonicTensor construction validates the trace") {
  CHECK_THROWS_AS(HarmonicTensor(msm::delta_power(1)), msm::NotTracelessError);
  CHECK_NOTHROW(HarmonicTensor(zonal_quadrupole()));
}

TEST_CASE("regular, spherical and irregular evaluations are consistent") {
  const HarmonicTensor dipole = HarmonicTensor(msm::from_vectors({msm::kZAxis}));
  const Vec3 r{0.4, -0.2, 1.1};
  const double rn = msm::norm(r);
  CHECK(msm::eval_irregular(dipole, r).real() ==
        doctest::Approx(r.z / std::pow(rn, 3)).epsilon(1e-14));

  for (int trial = 0; trial < 10; ++trial) {
    const HarmonicTensor h = msm::harmonic_components(random_tensor(4)).front();
    const Vec3 point = 1.7 * random_unit();
    const double pr = msm::norm(point);
    const double regular = msm::eval_regular(h, point).real();
    const double spherical = msm::eval_spherical(h, point).real();
    const double irregular = msm::eval_irregular(h, point).real();
    CHECK(std::abs(regular - std::pow(pr, 4) * spherical) <=
          1e-13 * std::max(1.0, std::abs(regular)));
    CHECK(std::abs(regular - std::pow(pr, 9) * irregular) <=
          1e-13 * std::max(1.0, std::abs(regular)));
    // eval_spherical normalizes its input.
    CHECK(msm::eval_spherical(h, 3.0 * point).real() == doctest::Approx(spherical));
  }
  CHECK_THROWS_AS(msm::eval_irregular(dipole, Vec3{}), std::domain_error);
}

TEST_CASE("sphere average of vector products") {
  const Vec3 a = random_unit(), b = random_unit(), c = random_unit();
  const std::array<Vec3, 2> ab{a, b};
  CHECK(msm::sphere_average_product(std::span<const Vec3>(ab)) ==
        doctest::Approx(dot(a, b) / 3.0).epsilon(1e-14));

  const std::array<Vec3, 4> zzzz{msm::kZAxis, msm::kZAxis, msm::kZAxis, msm::kZAxis};
  CHECK(msm::sphere_average_product(std::span<const Vec3>(zzzz)) ==
        doctest::Approx(0.2).epsilon(1e-15));

  const std::array<Vec3, 3> abc{a, b, c};
  CHECK(msm::sphere_average_product(std::span<const Vec3>(abc)) == 0.0);

  for (int n : {2, 4, 6, 8}) {
    std::vector<Vec3> vs(n);
    for (Vec3& v : vs) v = random_unit();
    const double pairing = msm::sphere_average_product(vs);
    const double quad = msm::sphere_average(n, msm::Exec::serial, [&](const Vec3& dir) {
      double prod = 1.0;
      for (const Vec3& v : vs) prod *= dot(v, dir);
      return prod;
    });
    CHECK(std::abs(pairing - quad) < 1e-10);
  }
}

TEST_CASE("exact monomial sphere integrals") {
  CHECK(msm::monomial_sphere_integral(0, 0, 0) == Rational(1));
  CHECK(msm::monomial_sphere_integral(0, 0, 1) == Rational(1, 3));
  CHECK(msm::monomial_sphere_integral(1, 1, 0) == Rational(1, 15));
  // Cross-check by quadrature for a spread of exponents.
  for (int p = 0; p <= 2; ++p) {
    for (int q = 0; q <= 2; ++q) {
      for (int r = 0; r <= 2; ++r) {
        const double exact = msm::monomial_sphere_integral(p, q, r).to_double();
        const double quad = msm::sphere_average(
            2 * (p + q + r), msm::Exec::serial, [&](const Vec3& n) {
              return std::pow(n.x, 2 * p) * std::pow(n.y, 2 * q) * std::pow(n.z, 2 * r);
            });
        CHECK(std::abs(exact - quad) < 1e-13);
      }
    }
  }
}

TEST_CASE("harmonic inner product") {
  const HarmonicTensor h = HarmonicTensor(zonal_quadrupole());
  CHECK(msm::harmonic_inner_product(h, h).real() ==
        doctest::Approx(4.0 / 45.0).epsilon(1e-14));

  // Orthogonality across orders, via the integral itself.
  const HarmonicTensor h4 = msm::harmonic_components(random_tensor(4)).front();
  const double cross = msm::sphere_average(6, msm::Exec::serial, [&](const Vec3& n) {
    return msm::evaluate(h.base(), n).real() * msm::evaluate(h4.base(), n).real();
  });
  CHECK(std::abs(cross) < 1e-13);

  const HarmonicTensor zero = HarmonicTensor(SymTensor(2, msm::ScalarKind::real));
  CHECK(msm::harmonic_inner_product(zero, h) == std::complex<double>{0.0, 0.0});
  CHECK_THROWS_AS(msm::harmonic_inner_product(h, h4), std::invalid_argument);
}

TEST_CASE("harmonic contraction through traces") {
  const SymTensor zz = msm::from_vectors({msm::kZAxis, msm::kZAxis});
  CHECK(msm::harmonic_contraction_via_traces(zz, zz).real() ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  // A traceless: reduces to the plain full contraction with B.
  const HarmonicTensor a = msm::harmonic_components(random_tensor(3)).front();
  const SymTensor b = random_tensor(3);
  CHECK(msm::harmonic_contraction_via_traces(a.base(), b).real() ==
        doctest::Approx(msm::full_contraction_scalar(a.base(), b).real()).epsilon(1e-12));

  for (int n = 1; n <= 6; ++n) {
    const SymTensor x = random_tensor(n);
    const SymTensor y = random_tensor(n);
    const double via_traces = msm::harmonic_contraction_via_traces(x, y).real();
    const double via_parts =
        msm::full_contraction_scalar(msm::harmonic_components(x).front().base(),
                                     msm::harmonic_components(y).front().base())
            .real();
    CHECK(std::abs(via_traces - via_parts) <= 1e-10 * std::max(1.0, std::abs(via_parts)));
  }
}

TEST_CASE("projection of spherical functions") {
  // nz^2 projects to the zonal quadrupole at order 2.
  const HarmonicTensor proj2 = msm::project_spherical_function(
      [](const Vec3& n) { return n.z * n.z; }, 2, 2);
  CHECK(msm::max_abs_difference(proj2.base(), zonal_quadrupole()) < 1e-13);

  // Constants have no component at positive order.
  const HarmonicTensor proj1 = msm::project_spherical_function(
      [](const Vec3&) { return 0.75; }, 1, 0);
  CHECK(proj1.base().max_abs_coeff() < 1e-14);

  // ((1 + nz)/2)^(2J) at J = 1/2 has order-1 component z/2.
  const HarmonicTensor half = msm::project_spherical_function(
      [](const Vec3& n) { return 0.5 * (1.0 + n.z); }, 1, 1);
  SymTensor expected = msm::from_vectors({msm::kZAxis});
  expected *= 0.5;
  CHECK(msm::max_abs_difference(half.base(), expected) < 1e-14);

  CHECK_THROWS_AS(
      msm::project_spherical_function([](const Vec3&) { return 1.0; }, 2, 40),
      std::invalid_argument);
}

TEST_CASE("projection reproduces harmonics of every order up to 8") {
  for (int order = 0; order <= 8; ++order) {
    const HarmonicTensor h = msm::harmonic_components(random_tensor(order)).front();
    const HarmonicTensor back = msm::project_spherical_function(
        [&](const Vec3& n) { return msm::evaluate(h.base(), n).real(); }, order, order);
    CHECK(msm::max_abs_difference(back.base(), h.base()) <
          1e-12 * std::max(1.0, h.base().max_abs_coeff()));
  }
}
