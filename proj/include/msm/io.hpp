#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "msm/config.hpp"
#include "msm/multipole.hpp"
#include "msm/observable.hpp"
#include "msm/spinstate.hpp"

namespace msm::io {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Tensor files: { "rank": n, "kind": "real"|"complex",
//                 "coeffs": [{"pqs": [p,q,s], "re": x, "im": y}, ...] }
// with entries in descending lexicographic (p,q,s) order, zeros omitted and
// "im" present only for complex tensors. Harmonic tensors carry an extra
// "order" field.
nlohmann::json tensor_to_json(const SymTensor& t);
SymTensor tensor_from_json(const nlohmann::json& j, int max_rank = kMaxRank);
nlohmann::json harmonic_to_json(const HarmonicTensor& h);
HarmonicTensor harmonic_from_json(const nlohmann::json& j, int max_rank = kMaxRank,
                                  double trace_tol = 1e-9);

// Skeleton files: { "order": l, "scale": s, "sign": +-1, "axes": [[x,y,z], ...] }.
nlohmann::json skeleton_to_json(const Skeleton& s);
Skeleton skeleton_from_json(const nlohmann::json& j, int max_order = kMaxRank);

// State files: { "two_j": n, "amplitudes": [{"re": x, "im": y}, ...] },
// ordered m = J down to -J. States are renormalized on load.
nlohmann::json state_to_json(const SpinState& psi);
SpinState state_from_json(const nlohmann::json& j);

// Observable files: { "kind": "classical"|"Q"|"P",
//                     "components": [{"order": l, "tensor": <tensor>}, ...] }.
nlohmann::json observable_to_json(const ClassicalObservable& obs);
ClassicalObservable observable_from_json(const nlohmann::json& j, int max_rank = kMaxRank);

// Constellation files share the skeleton axes layout.
nlohmann::json constellation_to_json(const Constellation& c);

// CSV rows: circle_index,x,y,z.
std::string circles_csv(const GreatCircleSamples& samples);

nlohmann::json load_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace msm::io
