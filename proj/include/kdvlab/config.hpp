#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "kdvlab/params.hpp"
#include "kdvlab/solver.hpp"

namespace kdvlab {

enum class Command {
  simulate,
  decompose,
  smoothing_scan,
  multiplier_scan,
  identity_check,
  demo_nonuniform,
  xsb_diagnostic
};

const char* to_string(Command c);
/// Accepts the CLI spelling ("smoothing-scan", ...). Throws ConfigError.
Command parse_command(const std::string& name);

/// Everything a run needs. Every field has a documented default, and the
/// effective values are echoed into each artifact.
struct RunConfig {
  Command command = Command::simulate;
  RegularityParams params;
  SolverConfig solver;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::vector<std::string> formats = {"csv", "json"};
  int threads = 0;  // 0: KDVLAB_THREADS, then hardware concurrency

  struct Data {
    std::string kind = "rough";  // rough | zero
    double amplitude = 1.0;  // physical L2 norm (2 pi sum |a|^2)^{1/2} of the data
  } data;

  struct Smoothing {
    std::vector<double> sigmas = {-0.25, 0.0, 0.25, 0.5};
    std::vector<int> Ns = {128, 256, 512};
    double sigma_test = 0.65;
    double l2_tol = 1e-2;  // accuracy gate of the refinement runs
    int max_halvings = 8;
  } smoothing;

  struct Multiplier {
    std::vector<std::string> kinds = {"M_eps", "M_mbound", "M1", "M2", "M3", "M3_star", "LB1", "LB2"};
    std::vector<int> Ns = {64, 128, 256};
    double eps = 0.1;
  } multiplier;

  struct Identity {
    int count = 10000;
    std::int64_t range = 1000;
  } identity;

  struct Nonuniform {
    int xi = 1;
    double delta = 0.1;
    double t_max = 10.0;
    int points = 100;
  } nonuniform;

  struct Xsb {
    double b = 0.5;
    double flat_fraction = 0.5;
    int samples = 512;
    double sample_dt = 1.0 / 256.0;
    double sigma = 0.0;
  } xsb;

  bool wants(const std::string& format) const;
};

/// Parses and validates. Unknown keys, type errors and parameter-constraint
/// violations throw ConfigError naming the offending key or constraint.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Re-checks every constraint (after CLI overrides).
void validate(const RunConfig& cfg);

/// Full effective configuration, defaults included.
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace kdvlab
