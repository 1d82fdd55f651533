// Command-line front end: kdvlab <command> [--config file.json] [overrides]

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kdvlab/config.hpp"
#include "kdvlab/error.hpp"
#include "kdvlab/reports.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Periodic KdV pseudospectral simulator and verification lab"};
  app.set_version_flag("--version", std::string(kdvlab::version()));

  std::string command;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  int threads = -1;
  std::string formats;

  app.add_option("command", command,
                 "simulate | decompose | smoothing-scan | multiplier-scan | identity-check | "
                 "demo-nonuniform | xsb-diagnostic (overrides the config file)");
  app.add_option("-c,--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("-o,--out", out_dir, "output directory");
  app.add_option("-j,--threads", threads, "worker threads (0: KDVLAB_THREADS or hardware)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", formats, "comma-separated subset of csv,json,svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kdvlab::exit_code::config;
  }

  kdvlab::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = kdvlab::load_config(config_path);
    if (!command.empty()) cfg.command = kdvlab::parse_command(command);
    if (*seed_opt) cfg.seed = seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads >= 0) cfg.threads = threads;
    if (!formats.empty()) {
      cfg.formats.clear();
      std::stringstream ss(formats);
      for (std::string f; std::getline(ss, f, ',');)
        if (!f.empty()) cfg.formats.push_back(f);
    }
    kdvlab::validate(cfg);
  } catch (const std::exception& e) {
    std::cerr << kdvlab::error_json(e).dump() << '\n';
    return kdvlab::exit_code_for(e);
  }
  return kdvlab::run(cfg, std::cout, std::cerr);
}
