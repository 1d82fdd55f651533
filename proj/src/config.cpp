#include "kdvlab/config.hpp"

#include <algorithm>
#include <set>

#include "kdvlab/error.hpp"
#include "kdvlab/multiplier_lab.hpp"
#include "kdvlab/serialize.hpp"

namespace kdvlab {

using nlohmann::json;

namespace {

struct CommandName {
  Command c;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::simulate, "simulate"},
    {Command::decompose, "decompose"},
    {Command::smoothing_scan, "smoothing-scan"},
    {Command::multiplier_scan, "multiplier-scan"},
    {Command::identity_check, "identity-check"},
    {Command::demo_nonuniform, "demo-nonuniform"},
    {Command::xsb_diagnostic, "xsb-diagnostic"},
};

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
      throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

constexpr const char* kFourierConvention = "f(x) = sum_xi a_xi e^{i xi x}, <xi> = 1 + |xi|";

}  // namespace

const char* to_string(Command c) {
  for (const auto& e : kCommands)
    if (e.c == c) return e.name;
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (const auto& e : kCommands)
    if (name == e.name) return e.c;
  throw ConfigError("unknown command '" + name + "'");
}

bool RunConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  check_keys(j, "config", {"command", "seed", "params", "solver", "data", "output", "threads", "smoothing",
                           "multiplier", "identity", "nonuniform", "xsb", "fourier_convention"});
  // Echoed configs carry the convention as a note; accept it only verbatim.
  if (j.contains("fourier_convention") && j["fourier_convention"] != kFourierConvention)
    throw ConfigError("config.fourier_convention: only \"" + std::string(kFourierConvention) + "\" is supported");
  if (j.contains("command")) {
    std::string name;
    read(j, "command", name, "config");
    c.command = parse_command(name);
  }
  read(j, "seed", c.seed, "config");
  read(j, "threads", c.threads, "config");

  if (j.contains("params")) {
    const json& p = j["params"];
    check_keys(p, "params", {"s", "delta", "gamma", "eps_tail"});
    read(p, "s", c.params.s, "params");
    read(p, "delta", c.params.delta, "params");
    read(p, "eps_tail", c.params.eps_tail, "params");
    c.params.gamma = 1.0 - 10.0 * c.params.delta;
    read(p, "gamma", c.params.gamma, "params");
  } else {
    c.params.gamma = 1.0 - 10.0 * c.params.delta;
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    check_keys(s, "solver", {"max_freq", "dt", "t_end", "sample_stride", "integrator", "c_cfl", "nonlinear"});
    read(s, "max_freq", c.solver.max_freq, "solver");
    read(s, "dt", c.solver.dt, "solver");
    read(s, "t_end", c.solver.t_end, "solver");
    read(s, "sample_stride", c.solver.sample_stride, "solver");
    read(s, "c_cfl", c.solver.c_cfl, "solver");
    read(s, "nonlinear", c.solver.nonlinear, "solver");
    std::string integ = "if_rk4";
    read(s, "integrator", integ, "solver");
    if (integ != "if_rk4") throw ConfigError("solver.integrator: only 'if_rk4' is supported");
  }

  if (j.contains("data")) {
    const json& d = j["data"];
    check_keys(d, "data", {"kind", "amplitude"});
    read(d, "kind", c.data.kind, "data");
    read(d, "amplitude", c.data.amplitude, "data");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "output", {"dir", "formats"});
    read(o, "dir", c.out_dir, "output");
    read(o, "formats", c.formats, "output");
  }
  if (j.contains("smoothing")) {
    const json& s = j["smoothing"];
    check_keys(s, "smoothing", {"sigmas", "Ns", "sigma_test", "l2_tol", "max_halvings"});
    read(s, "sigmas", c.smoothing.sigmas, "smoothing");
    read(s, "Ns", c.smoothing.Ns, "smoothing");
    read(s, "sigma_test", c.smoothing.sigma_test, "smoothing");
    read(s, "l2_tol", c.smoothing.l2_tol, "smoothing");
    read(s, "max_halvings", c.smoothing.max_halvings, "smoothing");
  }
  if (j.contains("multiplier")) {
    const json& m = j["multiplier"];
    check_keys(m, "multiplier", {"kinds", "Ns", "eps"});
    read(m, "kinds", c.multiplier.kinds, "multiplier");
    read(m, "Ns", c.multiplier.Ns, "multiplier");
    read(m, "eps", c.multiplier.eps, "multiplier");
  }
  if (j.contains("identity")) {
    const json& m = j["identity"];
    check_keys(m, "identity", {"count", "range"});
    read(m, "count", c.identity.count, "identity");
    read(m, "range", c.identity.range, "identity");
  }
  if (j.contains("nonuniform")) {
    const json& m = j["nonuniform"];
    check_keys(m, "nonuniform", {"xi", "delta", "t_max", "points"});
    read(m, "xi", c.nonuniform.xi, "nonuniform");
    read(m, "delta", c.nonuniform.delta, "nonuniform");
    read(m, "t_max", c.nonuniform.t_max, "nonuniform");
    read(m, "points", c.nonuniform.points, "nonuniform");
  }
  if (j.contains("xsb")) {
    const json& m = j["xsb"];
    check_keys(m, "xsb", {"b", "flat_fraction", "samples", "sample_dt", "sigma"});
    read(m, "b", c.xsb.b, "xsb");
    read(m, "flat_fraction", c.xsb.flat_fraction, "xsb");
    read(m, "samples", c.xsb.samples, "xsb");
    read(m, "sample_dt", c.xsb.sample_dt, "xsb");
    read(m, "sigma", c.xsb.sigma, "xsb");
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

void validate(const RunConfig& c) {
  c.params.validate();
  c.solver.validate();
  static const std::set<std::string> known_formats = {"csv", "json", "svg"};
  for (const auto& f : c.formats)
    if (!known_formats.count(f)) throw ConfigError("output.formats: unknown format '" + f + "'");
  if (c.data.kind != "rough" && c.data.kind != "zero") throw ConfigError("data.kind must be 'rough' or 'zero'");
  if (!(c.data.amplitude >= 0.0)) throw ConfigError("data.amplitude must be >= 0");
  if (c.threads < 0) throw ConfigError("threads must be >= 0");
  for (int n : c.smoothing.Ns)
    if (n < 16) throw ConfigError("smoothing.Ns entries must be >= 16");
  if (!(c.smoothing.l2_tol > 0.0)) throw ConfigError("smoothing.l2_tol must be > 0");
  if (c.smoothing.max_halvings < 0 || c.smoothing.max_halvings > 30)
    throw ConfigError("smoothing.max_halvings must lie in [0, 30]");
  for (const auto& k : c.multiplier.kinds)
    if (!parse_multiplier_kind(k)) throw ConfigError("multiplier.kinds: unknown multiplier '" + k + "'");
  for (int n : c.multiplier.Ns)
    if (n < 4) throw ConfigError("multiplier.Ns entries must be >= 4");
  if (!(c.multiplier.eps > 0.0 && c.multiplier.eps < 0.5)) throw ConfigError("multiplier.eps must lie in (0, 1/2)");
  if (c.identity.count < 1 || c.identity.range < 0 || c.identity.range > 1'000'000)
    throw ConfigError("identity: count must be >= 1 and range in [0, 10^6]");
  if (c.nonuniform.xi == 0) throw ConfigError("nonuniform.xi must be nonzero");
  if (!(c.nonuniform.delta > 0.0 && c.nonuniform.delta < 1.0)) throw ConfigError("nonuniform.delta must lie in (0, 1)");
  if (c.nonuniform.points < 2) throw ConfigError("nonuniform.points must be >= 2");
  if (!(c.xsb.b >= 0.0)) throw ConfigError("xsb.b must be >= 0");
  if (c.xsb.samples < 256) throw ConfigError("xsb.samples must be >= 256");
  if (!(c.xsb.sample_dt > 0.0)) throw ConfigError("xsb.sample_dt must be > 0");
  if (!(c.xsb.flat_fraction >= 0.0 && c.xsb.flat_fraction <= 1.0))
    throw ConfigError("xsb.flat_fraction must lie in [0, 1]");
}

json config_to_json(const RunConfig& c) {
  return {
      {"command", to_string(c.command)},
      {"seed", c.seed},
      {"threads", c.threads},
      {"params", {{"s", c.params.s}, {"delta", c.params.delta}, {"gamma", c.params.gamma},
                  {"eps_tail", c.params.eps_tail}}},
      {"solver", solver_config_to_json(c.solver)},
      {"data", {{"kind", c.data.kind}, {"amplitude", c.data.amplitude}}},
      {"output", {{"dir", c.out_dir}, {"formats", c.formats}}},
      {"smoothing", {{"sigmas", c.smoothing.sigmas}, {"Ns", c.smoothing.Ns},
                     {"sigma_test", c.smoothing.sigma_test}, {"l2_tol", c.smoothing.l2_tol},
                     {"max_halvings", c.smoothing.max_halvings}}},
      {"multiplier", {{"kinds", c.multiplier.kinds}, {"Ns", c.multiplier.Ns}, {"eps", c.multiplier.eps}}},
      {"identity", {{"count", c.identity.count}, {"range", c.identity.range}}},
      {"nonuniform", {{"xi", c.nonuniform.xi}, {"delta", c.nonuniform.delta}, {"t_max", c.nonuniform.t_max},
                      {"points", c.nonuniform.points}}},
      {"xsb", {{"b", c.xsb.b}, {"flat_fraction", c.xsb.flat_fraction}, {"samples", c.xsb.samples},
               {"sample_dt", c.xsb.sample_dt}, {"sigma", c.xsb.sigma}}},
      {"fourier_convention", kFourierConvention},
  };
}

}  // namespace kdvlab
