#include "msm/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace msm::io {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string(where) + ": missing field '" + key + "'");
  return j.at(key);
}

int require_int(const json& j, const char* key, const char* where) {
  const json& v = require_field(j, key, where);
  if (!v.is_number_integer())
    throw ParseError(std::string(where) + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

double require_number(const json& j, const char* key, const char* where) {
  const json& v = require_field(j, key, where);
  if (!v.is_number()) throw ParseError(std::string(where) + ": field '" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

json tensor_to_json(const SymTensor& t) {
  json coeffs = json::array();
  for (int i = 0; i < t.size(); ++i) {
    const std::complex<double> c = t[i];
    if (c == std::complex<double>{0.0, 0.0}) continue;
    const MultiIndex mi = SymTensor::index_at(t.rank(), i);
    json entry{{"pqs", {mi.p, mi.q, mi.s}}, {"re", c.real()}};
    if (t.kind() == ScalarKind::complex) entry["im"] = c.imag();
    coeffs.push_back(std::move(entry));
  }
  return json{{"rank", t.rank()},
              {"kind", t.kind() == ScalarKind::real ? "real" : "complex"},
              {"coeffs", std::move(coeffs)}};
}

SymTensor tensor_from_json(const json& j, int max_rank) {
  const int rank = require_int(j, "rank", "tensor");
  if (rank < 0) throw ParseError("tensor: negative rank");
  if (rank > max_rank)
    throw RankCapError("tensor: rank " + std::to_string(rank) + " exceeds cap " +
                       std::to_string(max_rank));
  const std::string kind_str = require_field(j, "kind", "tensor").get<std::string>();
  ScalarKind kind;
  if (kind_str == "real") {
    kind = ScalarKind::real;
  } else if (kind_str == "complex") {
    kind = ScalarKind::complex;
  } else {
    throw ParseError("tensor: kind must be 'real' or 'complex'");
  }
  const json& coeffs = require_field(j, "coeffs", "tensor");
  if (!coeffs.is_array()) throw ParseError("tensor: 'coeffs' must be an array");

  SymTensor t(rank, kind);
  std::set<int> seen;
  for (const json& entry : coeffs) {
    const json& pqs = require_field(entry, "pqs", "tensor coefficient");
    if (!pqs.is_array() || pqs.size() != 3)
      throw ParseError("tensor: 'pqs' must be an array of three integers");
    const int p = pqs[0].get<int>(), q = pqs[1].get<int>(), s = pqs[2].get<int>();
    if (p < 0 || q < 0 || s < 0 || p + q + s != rank)
      throw ParseError("tensor: 'pqs' exponents must be non-negative and sum to the rank");
    const double re = require_number(entry, "re", "tensor coefficient");
    double im = 0.0;
    if (entry.contains("im")) {
      if (kind == ScalarKind::real && entry.at("im").get<double>() != 0.0)
        throw ParseError("tensor: real tensor carries a nonzero imaginary part");
      im = entry.at("im").get<double>();
    }
    const int slot = SymTensor::slot(rank, p, q);
    if (!seen.insert(slot).second) throw ParseError("tensor: duplicate 'pqs' entry");
    t[slot] = {re, im};
  }
  return t;
}

json harmonic_to_json(const HarmonicTensor& h) {
  json j = tensor_to_json(h.base());
  j["order"] = h.order();
  return j;
}

HarmonicTensor harmonic_from_json(const json& j, int max_rank, double trace_tol) {
  SymTensor t = tensor_from_json(j, max_rank);
  if (j.contains("order") && j.at("order").get<int>() != t.rank())
    throw ParseError("harmonic tensor: 'order' disagrees with 'rank'");
  return HarmonicTensor(std::move(t), trace_tol);  // throws NotTracelessError
}

json skeleton_to_json(const Skeleton& s) {
  json axes = json::array();
  for (const Vec3& u : s.axes) axes.push_back({u.x, u.y, u.z});
  return json{{"order", s.order()}, {"scale", s.scale}, {"sign", s.sign}, {"axes", std::move(axes)}};
}

Skeleton skeleton_from_json(const json& j, int max_order) {
  const int order = require_int(j, "order", "skeleton");
  if (order < 0) throw ParseError("skeleton: negative order");
  if (order > max_order)
    throw RankCapError("skeleton: order " + std::to_string(order) + " exceeds cap " +
                       std::to_string(max_order));
  Skeleton s;
  s.scale = require_number(j, "scale", "skeleton");
  if (s.scale < 0.0) throw ParseError("skeleton: scale must be non-negative");
  s.sign = require_int(j, "sign", "skeleton");
  if (s.sign != 1 && s.sign != -1) throw ParseError("skeleton: sign must be +1 or -1");
  const json& axes = require_field(j, "axes", "skeleton");
  if (!axes.is_array() || static_cast<int>(axes.size()) != order)
    throw ParseError("skeleton: 'axes' must list exactly 'order' vectors");
  for (const json& a : axes) {
    if (!a.is_array() || a.size() != 3) throw ParseError("skeleton: axis must have 3 components");
    const Vec3 u{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
    const double n = norm(u);
    if (std::abs(n - 1.0) > 1e-6) throw ParseError("skeleton: axes must be unit vectors");
    s.axes.push_back(normalized(u));
  }
  return s;
}

json state_to_json(const SpinState& psi) {
  json amps = json::array();
  for (int i = 0; i < psi.dim(); ++i)
    amps.push_back({{"re", psi.amp(i).real()}, {"im", psi.amp(i).imag()}});
  return json{{"two_j", psi.two_j()}, {"amplitudes", std::move(amps)}};
}

SpinState state_from_json(const json& j) {
  const int two_j = require_int(j, "two_j", "state");
  if (two_j < 0) throw ParseError("state: negative two_j");
  const json& amps = require_field(j, "amplitudes", "state");
  if (!amps.is_array() || static_cast<int>(amps.size()) != two_j + 1)
    throw ParseError("state: expected exactly 2J + 1 amplitudes");
  std::vector<std::complex<double>> values;
  values.reserve(amps.size());
  for (const json& a : amps)
    values.emplace_back(require_number(a, "re", "amplitude"), require_number(a, "im", "amplitude"));
  return SpinState(two_j, std::move(values));  // throws ZeroStateError for the zero state
}

json observable_to_json(const ClassicalObservable& obs) {
  json comps = json::array();
  for (const ObservableComponent& c : obs.components())
    comps.push_back({{"order", c.order}, {"tensor", harmonic_to_json(c.tensor)}});
  const char* kind = obs.kind() == SymbolKind::classical ? "classical"
                     : obs.kind() == SymbolKind::q_symbol ? "Q"
                                                          : "P";
  return json{{"kind", kind}, {"components", std::move(comps)}};
}

ClassicalObservable observable_from_json(const json& j, int max_rank) {
  ClassicalObservable obs;
  const std::string kind = require_field(j, "kind", "observable").get<std::string>();
  if (kind == "classical") {
    obs.set_kind(SymbolKind::classical);
  } else if (kind == "Q") {
    obs.set_kind(SymbolKind::q_symbol);
  } else if (kind == "P") {
    obs.set_kind(SymbolKind::p_symbol);
  } else {
    throw ParseError("observable: kind must be 'classical', 'Q' or 'P'");
  }
  const json& comps = require_field(j, "components", "observable");
  if (!comps.is_array()) throw ParseError("observable: 'components' must be an array");
  for (const json& c : comps) {
    const int order = require_int(c, "order", "observable component");
    HarmonicTensor h = harmonic_from_json(require_field(c, "tensor", "observable component"),
                                          max_rank);
    if (h.order() != order)
      throw ParseError("observable component: order disagrees with tensor rank");
    if (h.base().kind() != ScalarKind::real)
      throw ParseError("observable component: tensors must be real");
    obs.add_component(order, h);
  }
  return obs;
}

json constellation_to_json(const Constellation& c) {
  json stars = json::array();
  for (const Vec3& s : c.stars) stars.push_back({s.x, s.y, s.z});
  return json{{"two_j", c.two_j}, {"stars", std::move(stars)}};
}

std::string circles_csv(const GreatCircleSamples& samples) {
  std::ostringstream os;
  os << "circle_index,x,y,z\n";
  os.precision(17);
  for (std::size_t c = 0; c < samples.circles.size(); ++c)
    for (const Vec3& p : samples.circles[c])
      os << c << ',' << p.x << ',' << p.y << ',' << p.z << '\n';
  return os.str();
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
}

}  // namespace msm::io
