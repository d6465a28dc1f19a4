#include <doctest.h>

#include <random>

#include "msm/io.hpp"

namespace {

using nlohmann::json;
using msm::SymTensor;
using Complex = std::complex<double>;

std::mt19937_64 rng(606);

SymTensor random_tensor(int rank, msm::ScalarKind kind) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymTensor t(rank, kind);
  for (int i = 0; i < t.size(); ++i)
    t[i] = kind == msm::ScalarKind::real ? Complex{u(rng), 0.0} : Complex{u(rng), u(rng)};
  return t;
}

}  // namespace

TEST_CASE("tensor JSON round trip") {
  for (msm::ScalarKind kind : {msm::ScalarKind::real, msm::ScalarKind::complex}) {
    const SymTensor t = random_tensor(3, kind);
    const SymTensor back = msm::io::tensor_from_json(msm::io::tensor_to_json(t));
    CHECK(back.rank() == t.rank());
    CHECK(back.kind() == t.kind());
    CHECK(msm::max_abs_difference(t, back) == 0.0);
  }

  // Zeros are omitted; entries appear in descending (p, q, s) order.
  SymTensor sparse(2, msm::ScalarKind::real);
  sparse.set_coeff(2, 0, 0, 1.5);
  sparse.set_coeff(0, 0, 2, -0.5);
  const json j = msm::io::tensor_to_json(sparse);
  REQUIRE(j.at("coeffs").size() == 2);
  CHECK(j.at("coeffs")[0].at("pqs") == json::array({2, 0, 0}));
  CHECK(j.at("coeffs")[1].at("pqs") == json::array({0, 0, 2}));
  CHECK(!j.at("coeffs")[0].contains("im"));
}

TEST_CASE("tensor JSON validation errors") {
  CHECK_THROWS_AS(msm::io::tensor_from_json(json{{"rank", 2}}), msm::io::ParseError);
  CHECK_THROWS_AS(
      msm::io::tensor_from_json(json{{"rank", 2}, {"kind", "real"}, {"coeffs", 5}}),
      msm::io::ParseError);
  CHECK_THROWS_AS(msm::io::tensor_from_json(
                      json{{"rank", 2}, {"kind", "quaternion"}, {"coeffs", json::array()}}),
                  msm::io::ParseError);
  // pqs must sum to the rank.
  CHECK_THROWS_AS(
      msm::io::tensor_from_json(json{
          {"rank", 2},
          {"kind", "real"},
          {"coeffs", json::array({json{{"pqs", {1, 0, 0}}, {"re", 1.0}}})}}),
      msm::io::ParseError);
  // Duplicate entries are rejected.
  CHECK_THROWS_AS(
      msm::io::tensor_from_json(json{
          {"rank", 1},
          {"kind", "real"},
          {"coeffs", json::array({json{{"pqs", {1, 0, 0}}, {"re", 1.0}},
                                  json{{"pqs", {1, 0, 0}}, {"re", 2.0}}})}}),
      msm::io::ParseError);
  // A real tensor cannot carry imaginary parts.
  CHECK_THROWS_AS(
      msm::io::tensor_from_json(json{
          {"rank", 1},
          {"kind", "real"},
          {"coeffs", json::array({json{{"pqs", {1, 0, 0}}, {"re", 1.0}, {"im", 2.0}}})}}),
      msm::io::ParseError);
  // Structurally valid but over the cap.
  CHECK_THROWS_AS(
      msm::io::tensor_from_json(
          json{{"rank", 4}, {"kind", "real"}, {"coeffs", json::array()}}, 2),
      msm::RankCapError);
}

TEST_CASE("harmonic JSON checks tracelessness and order") {
  const msm::HarmonicTensor h = msm::harmonic_components(random_tensor(2, msm::ScalarKind::real)).front();
  const json j = msm::io::harmonic_to_json(h);
  CHECK(j.at("order") == 2);
  const msm::HarmonicTensor back = msm::io::harmonic_from_json(j);
  CHECK(msm::max_abs_difference(h.base(), back.base()) == 0.0);

  CHECK_THROWS_AS(msm::io::harmonic_from_json(msm::io::tensor_to_json(msm::delta_power(1))),
                  msm::NotTracelessError);
  json mismatched = j;
  mismatched["order"] = 4;
  CHECK_THROWS_AS(msm::io::harmonic_from_json(mismatched), msm::io::ParseError);
}

TEST_CASE("skeleton JSON round trip and validation") {
  msm::Skeleton s;
  s.axes = {msm::kZAxis, msm::normalized(msm::Vec3{1.0, 2.0, 2.0})};
  s.scale = 1.75;
  s.sign = -1;
  const msm::Skeleton back = msm::io::skeleton_from_json(msm::io::skeleton_to_json(s));
  CHECK(back.order() == 2);
  CHECK(back.scale == 1.75);
  CHECK(back.sign == -1);
  CHECK(msm::angle_between(back.axes[1], s.axes[1]) < 1e-15);

  json bad = msm::io::skeleton_to_json(s);
  bad["axes"][0] = json::array({0.0, 0.0, 0.5});  // not unit
  CHECK_THROWS_AS(msm::io::skeleton_from_json(bad), msm::io::ParseError);
  bad = msm::io::skeleton_to_json(s);
  bad["sign"] = 2;
  CHECK_THROWS_AS(msm::io::skeleton_from_json(bad), msm::io::ParseError);
  bad = msm::io::skeleton_to_json(s);
  bad["scale"] = -1.0;
  CHECK_THROWS_AS(msm::io::skeleton_from_json(bad), msm::io::ParseError);
}

TEST_CASE("state JSON round trip; zero state rejected") {
  const msm::SpinState psi(2, {Complex{0.5, -0.5}, Complex{0.0, 0.7}, Complex{-0.1, 0.0}});
  const msm::SpinState back = msm::io::state_from_json(msm::io::state_to_json(psi));
  CHECK(back.two_j() == 2);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(back.amp(i) - psi.amp(i)) < 1e-15);

  json zero{{"two_j", 1},
            {"amplitudes", json::array({json{{"re", 0.0}, {"im", 0.0}},
                                        json{{"re", 0.0}, {"im", 0.0}}})}};
  CHECK_THROWS_AS(msm::io::state_from_json(zero), msm::ZeroStateError);
  json short_list{{"two_j", 2}, {"amplitudes", json::array({json{{"re", 1.0}, {"im", 0.0}}})}};
  CHECK_THROWS_AS(msm::io::state_from_json(short_list), msm::io::ParseError);
}

TEST_CASE("observable JSON round trip") {
  msm::ClassicalObservable obs =
      msm::classical_from_polynomial(random_tensor(2, msm::ScalarKind::real));
  const msm::ClassicalObservable back =
      msm::io::observable_from_json(msm::io::observable_to_json(obs));
  CHECK(back.kind() == msm::SymbolKind::classical);
  REQUIRE(back.components().size() == obs.components().size());
  for (std::size_t i = 0; i < back.components().size(); ++i) {
    CHECK(back.components()[i].order == obs.components()[i].order);
    CHECK(msm::max_abs_difference(back.components()[i].tensor.base(),
                                  obs.components()[i].tensor.base()) == 0.0);
  }

  json bad = msm::io::observable_to_json(obs);
  bad["kind"] = "W";
  CHECK_THROWS_AS(msm::io::observable_from_json(bad), msm::io::ParseError);
}

TEST_CASE("circles CSV layout") {
  msm::Skeleton s;
  s.axes = {msm::kZAxis, msm::kXAxis};
  const std::string csv = msm::io::circles_csv(msm::great_circle_samples(s, 5));
  std::size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 1 + 2 * 5);  // header + order * count
  CHECK(csv.rfind("circle_index,x,y,z\n", 0) == 0);
}
