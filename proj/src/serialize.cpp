#include "kdvlab/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kdvlab/error.hpp"

namespace kdvlab {

using nlohmann::json;

json field_to_json(const FourierField& field) {
  json re = json::array(), im = json::array();
  for (const Complex& z : field.coeffs()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw NumericError("field_to_json: non-finite coefficient");
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"n", field.max_freq()}, {"re", re}, {"im", im}, {"real", field.is_real()},
          {"mean_zero", field.is_mean_zero()}};
}

FourierField field_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (n < 0 || re.size() != static_cast<std::size_t>(2 * n + 1) || im.size() != re.size())
      throw IoError("field_from_json: array length does not match n");
    std::vector<Complex> c(re.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Complex(re[i].get<double>(), im[i].get<double>());
    return FourierField(n, std::move(c), j.at("real").get<bool>(), j.at("mean_zero").get<bool>());
  } catch (const json::exception& e) {
    throw IoError(std::string("field_from_json: ") + e.what());
  }
}

json solver_config_to_json(const SolverConfig& cfg) {
  return {{"max_freq", cfg.max_freq}, {"dt", cfg.dt},          {"t_end", cfg.t_end},
          {"sample_stride", cfg.sample_stride}, {"integrator", to_string(cfg.integrator)},
          {"c_cfl", cfg.c_cfl},       {"nonlinear", cfg.nonlinear}};
}

namespace {

std::string sample_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sample_%05zu.json", i);
  return buf;
}

}  // namespace

void write_trajectory(const Trajectory& traj, const std::filesystem::path& dir) {
  json files = json::array();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    files.push_back(sample_name(i));
    write_text(dir / sample_name(i), field_to_json(traj.fields[i]).dump() + "\n");
  }
  json manifest = {{"config", solver_config_to_json(traj.config)}, {"times", traj.times}, {"samples", files}};
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

Trajectory read_trajectory(const std::filesystem::path& dir) {
  Trajectory traj;
  try {
    const json m = json::parse(read_text(dir / "manifest.json"));
    const json& c = m.at("config");
    traj.config.max_freq = c.at("max_freq").get<int>();
    traj.config.dt = c.at("dt").get<double>();
    traj.config.t_end = c.at("t_end").get<double>();
    traj.config.sample_stride = c.at("sample_stride").get<int>();
    traj.config.c_cfl = c.at("c_cfl").get<double>();
    traj.config.nonlinear = c.at("nonlinear").get<bool>();
    traj.times = m.at("times").get<std::vector<double>>();
    for (const auto& name : m.at("samples"))
      traj.fields.push_back(field_from_json(json::parse(read_text(dir / name.get<std::string>()))));
  } catch (const json::exception& e) {
    throw IoError(std::string("read_trajectory: ") + e.what());
  }
  if (traj.fields.size() != traj.times.size()) throw IoError("read_trajectory: sample count mismatch");
  return traj;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc{}) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
  return std::string(buf, res.ptr);
}

std::string conserved_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t,mean,l2,hamiltonian\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const ConservedQuantities q = conserved_quantities(traj.fields[i]);
    os << format_double(traj.times[i]) << ',' << format_double(q.mean) << ',' << format_double(q.l2) << ','
       << format_double(q.hamiltonian) << '\n';
  }
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace kdvlab
