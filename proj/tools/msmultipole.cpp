// Command-line front end: harmonic decomposition, multipole-vector
// extraction, expectation values, Husimi/star emission, and the self-check
// suite. Commands read and write UTF-8 JSON/CSV files and never leave
// partial outputs behind on error.

#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "msm/config.hpp"
#include "msm/io.hpp"
#include "msm/selfcheck.hpp"

namespace {

using nlohmann::json;

// Exit codes shared by all commands.
constexpr int kOkStatus = 0;
constexpr int kGenericError = 1;
constexpr int kParseStatus = 2;
constexpr int kRankCapStatus = 3;
constexpr int kNotTracelessStatus = 4;
constexpr int kPairingStatus = 5;
constexpr int kOrderExceedsSpinStatus = 6;
constexpr int kZeroStateStatus = 7;

int effective_max_order() {
  int cap = msm::kMaxRank;
  if (const char* env = std::getenv("MULTIPOLE_MAX_ORDER")) {
    try {
      cap = std::min(cap, std::stoi(env));
    } catch (const std::exception&) {
      throw msm::io::ParseError("MULTIPOLE_MAX_ORDER is not an integer");
    }
    if (cap < 0) throw msm::io::ParseError("MULTIPOLE_MAX_ORDER must be non-negative");
  }
  return cap;
}

void emit(const json& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload.dump(2) << "\n";
  } else {
    msm::io::write_text_file(out_path, payload.dump(2) + "\n");
  }
}

int cmd_decompose(const std::string& input, const std::string& out_path) {
  const msm::SymTensor tensor =
      msm::io::tensor_from_json(msm::io::load_json_file(input), effective_max_order());
  const std::vector<msm::HarmonicTensor> parts = msm::harmonic_components(tensor);
  const double residual =
      msm::max_abs_difference(tensor, msm::reconstruct(parts)) /
      std::max(1.0, tensor.max_abs_coeff());

  json components = json::array();
  for (const msm::HarmonicTensor& part : parts) components.push_back(msm::io::harmonic_to_json(part));
  emit(json{{"rank", tensor.rank()}, {"components", components}, {"residual", residual}},
       out_path);
  std::cerr << "decompose: " << parts.size() << " components, residual " << residual << "\n";
  return kOkStatus;
}

int cmd_sylvester(const std::string& input, const std::string& out_path, int circles) {
  const msm::HarmonicTensor h = msm::io::harmonic_from_json(msm::io::load_json_file(input),
                                                            effective_max_order());
  const msm::Skeleton skeleton = msm::sylvester_decompose(h);
  const double residual = msm::sylvester_residual(h, skeleton);

  json payload = msm::io::skeleton_to_json(skeleton);
  payload["residual"] = residual;

  std::optional<std::string> circles_out;
  std::string circles_content;
  if (circles > 0) {
    circles_content = msm::io::circles_csv(msm::great_circle_samples(skeleton, circles));
    circles_out = out_path.empty() ? std::string("circles.csv") : out_path + ".circles.csv";
  }
  emit(payload, out_path);
  if (circles_out) msm::io::write_text_file(*circles_out, circles_content);
  std::cerr << "sylvester: order " << skeleton.order() << ", residual " << residual;
  if (circles_out) std::cerr << ", circles -> " << *circles_out;
  std::cerr << "\n";
  return kOkStatus;
}

int cmd_expect(const std::string& state_path, const std::string& obs_path,
               const std::string& method, const std::string& out_path) {
  const int cap = effective_max_order();
  const msm::SpinState psi = msm::io::state_from_json(msm::io::load_json_file(state_path));
  const msm::ClassicalObservable obs =
      msm::io::observable_from_json(msm::io::load_json_file(obs_path), cap);
  if (obs.kind() != msm::SymbolKind::classical)
    throw msm::io::ParseError("expect: observable must be classical");
  if (obs.max_order() > psi.two_j())
    throw msm::OrderExceedsSpinError("expect: observable order exceeds 2J");

  json values;
  if (method == "tensor" || method == "all")
    values["tensor"] = msm::expectation_tensor(psi, obs);
  if (method == "skeleton" || method == "all")
    values["skeleton"] = msm::expectation_skeleton(psi, obs);
  if (method == "oracle" || method == "all")
    values["oracle"] =
        msm::expectation_value(psi, msm::quantize_observable(obs, psi.two_j()));

  double max_delta = 0.0;
  for (auto it = values.begin(); it != values.end(); ++it)
    for (auto jt = values.begin(); jt != values.end(); ++jt)
      max_delta = std::max(max_delta,
                           std::abs(it.value().get<double>() - jt.value().get<double>()));

  json payload{{"values", values}, {"max_delta", max_delta}};
  emit(payload, out_path);
  std::cerr << "expect:";
  for (auto it = values.begin(); it != values.end(); ++it)
    std::cerr << " " << it.key() << "=" << it.value().get<double>();
  std::cerr << " (max delta " << max_delta << ")\n";
  return max_delta < 1e-7 ? kOkStatus : kGenericError;
}

int cmd_husimi(const std::string& state_path, int grid, const std::string& out_path) {
  if (grid < 8) throw std::invalid_argument("husimi: --grid must be at least 8");
  const msm::SpinState psi = msm::io::state_from_json(msm::io::load_json_file(state_path));

  // N x 2N midpoint equiangular grid; rows carry sin(theta) d(theta) d(phi)
  // weights so a weighted sum approximates the integral over the sphere.
  std::ostringstream csv;
  csv.precision(17);
  csv << "theta_index,phi_index,theta,phi,Q\n";
  const int rows = grid, cols = 2 * grid;
  std::vector<double> values(static_cast<std::size_t>(rows) * cols);
  msm::parallel_for(static_cast<std::size_t>(rows) * cols, msm::default_exec(),
                    [&](std::size_t cell) {
                      const int i = static_cast<int>(cell) / cols;
                      const int j = static_cast<int>(cell) % cols;
                      const double theta = (i + 0.5) * std::numbers::pi / rows;
                      const double phi = j * 2.0 * std::numbers::pi / cols;
                      values[cell] = msm::husimi(psi, msm::from_polar(theta, phi));
                    });
  for (int i = 0; i < rows; ++i) {
    const double theta = (i + 0.5) * std::numbers::pi / rows;
    for (int j = 0; j < cols; ++j) {
      const double phi = j * 2.0 * std::numbers::pi / cols;
      csv << i << ',' << j << ',' << theta << ',' << phi << ','
          << values[static_cast<std::size_t>(i) * cols + j] << '\n';
    }
  }

  const msm::Constellation stars = msm::majorana_stars(psi);
  const std::string csv_path = out_path.empty() ? "husimi.csv" : out_path;
  msm::io::write_text_file(csv_path, csv.str());
  const std::string stars_path = csv_path + ".stars.json";
  msm::io::write_text_file(stars_path, msm::io::constellation_to_json(stars).dump(2) + "\n");
  std::cerr << "husimi: " << rows << "x" << cols << " grid -> " << csv_path << ", "
            << stars.stars.size() << " stars -> " << stars_path << "\n";
  return kOkStatus;
}

int cmd_check(std::uint64_t seed) {
  msm::CheckOptions options;
  options.seed = seed;
  const std::vector<msm::CheckResult> results = msm::run_acceptance_checks(options);
  // Report bytes are deterministic for a fixed seed; timings go to stderr.
  const int failures = msm::print_report(std::cout, results, /*include_timing=*/false);
  double total = 0.0;
  for (const msm::CheckResult& r : results) total += r.seconds;
  std::cerr << "check: " << results.size() - failures << "/" << results.size()
            << " passed in " << total << " s\n";
  return failures == 0 ? kOkStatus : kGenericError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordinate-free symmetric-tensor calculus, multipole vectors, and spin-state geometry"};
  app.require_subcommand(1);

  std::string input, state_path, obs_path, out_path, method = "all";
  int circles = 0;
  int grid = 64;
  std::uint64_t seed = 42;

  CLI::App* decompose = app.add_subcommand("decompose", "Split a tensor into harmonic components");
  decompose->add_option("input", input, "tensor JSON file")->required();
  decompose->add_option("--out", out_path, "output JSON path (stdout if omitted)");

  CLI::App* sylvester =
      app.add_subcommand("sylvester", "Extract multipole vectors from a harmonic tensor");
  sylvester->add_option("input", input, "harmonic tensor JSON file")->required();
  sylvester->add_option("--out", out_path, "output JSON path (stdout if omitted)");
  sylvester->add_option("--circles", circles, "emit N samples per great circle as CSV");

  CLI::App* expect = app.add_subcommand("expect", "Expectation value of an observable");
  expect->add_option("state", state_path, "state JSON file")->required();
  expect->add_option("observable", obs_path, "observable JSON file")->required();
  expect->add_option("--method", method, "tensor | skeleton | oracle | all")
      ->check(CLI::IsMember({"tensor", "skeleton", "oracle", "all"}));
  expect->add_option("--out", out_path, "output JSON path (stdout if omitted)");

  CLI::App* husimi = app.add_subcommand("husimi", "Husimi grid samples and Majorana stars");
  husimi->add_option("state", state_path, "state JSON file")->required();
  husimi->add_option("--grid", grid, "polar grid rows (>= 8)");
  husimi->add_option("--out", out_path, "CSV output path (default husimi.csv)");

  CLI::App* check = app.add_subcommand("check", "Run the full self-check suite");
  check->add_option("--seed", seed, "RNG seed (default 42)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (decompose->parsed()) return cmd_decompose(input, out_path);
    if (sylvester->parsed()) return cmd_sylvester(input, out_path, circles);
    if (expect->parsed()) return cmd_expect(state_path, obs_path, method, out_path);
    if (husimi->parsed()) return cmd_husimi(state_path, grid, out_path);
    if (check->parsed()) return cmd_check(seed);
  } catch (const msm::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseStatus;
  } catch (const msm::RankCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRankCapStatus;
  } catch (const msm::NotTracelessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotTracelessStatus;
  } catch (const msm::PairingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPairingStatus;
  } catch (const msm::OrderExceedsSpinError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOrderExceedsSpinStatus;
  } catch (const msm::ZeroStateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kZeroStateStatus;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGenericError;
  }
  return kGenericError;
}
