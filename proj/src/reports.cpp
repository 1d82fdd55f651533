#include "kdvlab/reports.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "kdvlab/error.hpp"
#include "kdvlab/multiplier_lab.hpp"
#include "kdvlab/normal_form.hpp"
#include "kdvlab/random_field.hpp"
#include "kdvlab/serialize.hpp"
#include "kdvlab/smoothing_lab.hpp"
#include "kdvlab/spectral.hpp"
#include "kdvlab/svg.hpp"

#ifndef KDVLAB_VERSION
#define KDVLAB_VERSION "0.0.0"
#endif

namespace kdvlab {

using nlohmann::json;

const char* version() { return KDVLAB_VERSION; }

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return exit_code::config;
  if (dynamic_cast<const IoError*>(&e)) return exit_code::io;
  return exit_code::numeric;
}

json error_json(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  return {{"error", {{"kind", err ? err->kind() : "internal"}, {"message", e.what()},
                     {"exit_code", exit_code_for(e)}}}};
}

namespace {

// CSV writer that prefixes the effective configuration as a comment line.
class Csv {
 public:
  Csv(const json& config, const std::string& header) { os_ << "# config=" << config.dump() << '\n' << header << '\n'; }

  template <class... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long long v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(unsigned long long v) { return std::to_string(v); }
  static std::string cell(unsigned long v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  std::ostringstream os_;
};

std::string svg_with_config(std::string svg, const json& config) {
  std::string safe;
  for (char c : config.dump()) {
    if (c == '<') safe += "&lt;";
    else if (c == '&') safe += "&amp;";
    else safe += c;
  }
  const auto pos = svg.find('\n');
  svg.insert(pos == std::string::npos ? svg.size() : pos + 1, "<desc>" + safe + "</desc>\n");
  return svg;
}

// Rescales so that 2 pi sum |a_xi|^2 = target^2.
FourierField with_physical_l2(const FourierField& f, double target) {
  const double norm = std::sqrt(2.0 * std::numbers::pi) * sobolev_norm(f, 0.0);
  if (!(norm > 0.0)) throw NumericError("initial data has zero norm");
  return f.scaled(target / norm);
}

FourierField initial_data(const RunConfig& cfg) {
  const int n = cfg.solver.max_freq;
  if (cfg.data.kind == "zero") return FourierField(n, true, true);
  if (n < 2) throw ConfigError("solver.max_freq must be >= 2 for rough data");
  return with_physical_l2(random_rough_field(n, cfg.params, cfg.seed), cfg.data.amplitude);
}

void emit(RunArtifacts& out, const RunConfig& cfg, const std::string& stem, const Csv& csv,
          const std::vector<PlotSeries>& plot, const PlotOptions& opt) {
  if (cfg.wants("csv")) out.files[stem + ".csv"] = csv.str();
  if (cfg.wants("svg") && !plot.empty())
    out.files[stem + ".svg"] = svg_with_config(line_plot(plot, opt), config_to_json(cfg));
}

void run_simulate(const RunConfig& cfg, RunArtifacts& out) {
  const json echo = config_to_json(cfg);
  const FourierField u0 = initial_data(cfg);
  const Trajectory traj = evolve(u0, cfg.solver);
  Csv csv(echo, "t,mean,l2,hamiltonian");
  PlotSeries l2{"l2", {}, {}}, ham{"hamiltonian", {}, {}};
  const ConservedQuantities q0 = conserved_quantities(u0);
  double mean_drift = 0, l2_drift = 0, h_drift = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const ConservedQuantities q = conserved_quantities(traj.fields[i]);
    csv.row(traj.times[i], q.mean, q.l2, q.hamiltonian);
    l2.x.push_back(traj.times[i]); l2.y.push_back(q.l2);
    ham.x.push_back(traj.times[i]); ham.y.push_back(q.hamiltonian);
    mean_drift = std::max(mean_drift, std::abs(q.mean - q0.mean));
    l2_drift = std::max(l2_drift, q0.l2 > 0 ? std::abs(q.l2 - q0.l2) / q0.l2 : std::abs(q.l2));
    h_drift = std::max(h_drift, std::abs(q.hamiltonian - q0.hamiltonian) / (1.0 + std::abs(q0.hamiltonian)));
  }
  emit(out, cfg, "conserved", csv, {l2, ham}, {"conserved quantities", "t", "value"});
  out.summary = {{"initial", {{"mean", q0.mean}, {"l2", q0.l2}, {"hamiltonian", q0.hamiltonian}}},
                 {"max_mean_drift", mean_drift},
                 {"max_relative_l2_drift", l2_drift},
                 {"max_relative_hamiltonian_drift", h_drift},
                 {"samples", traj.size()},
                 {"final_field", field_to_json(traj.fields.back())}};
  if (cfg.wants("json")) {
    for (std::size_t i = 0; i < traj.size(); ++i) {
      char name[48];
      std::snprintf(name, sizeof name, "trajectory/sample_%05zu.json", i);
      out.files[name] = field_to_json(traj.fields[i]).dump() + "\n";
    }
    json files = json::array();
    for (std::size_t i = 0; i < traj.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "sample_%05zu.json", i);
      files.push_back(name);
    }
    out.files["trajectory/manifest.json"] =
        json({{"config", solver_config_to_json(traj.config)}, {"times", traj.times}, {"samples", files}}).dump(2) +
        "\n";
  }
}

void run_decompose(const RunConfig& cfg, RunArtifacts& out) {
  const json echo = config_to_json(cfg);
  const double s = cfg.params.s;
  const FourierField u0 = initial_data(cfg);
  Trajectory v = evolve(u0, cfg.solver);
  for (auto& f : v.fields) f = apply_multiplier(f, MultiplierSymbol::bessel(-s));
  const FourierField f = v.fields.front();
  const Decomposition d = decompose(v, f, s);
  Csv csv(echo, "t,part,l2,h1");
  PlotSeries pw{"w (H1)", {}, {}}, ph{"h (H1)", {}, {}}, pk{"k (H1)", {}, {}};
  double recon = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = v.times[i];
    const std::pair<const char*, const FourierField*> parts[] = {
        {"v", &v.fields[i]}, {"r", &d.r_part.fields[i]}, {"h", &d.h_part.fields[i]},
        {"k", &d.k_part.fields[i]}, {"w", &d.w_part.fields[i]}};
    for (const auto& [name, field] : parts)
      csv.row(t, std::string(name), sobolev_norm(*field, 0.0), sobolev_norm(*field, 1.0));
    FourierField sum = d.r_part.fields[i];
    sum.relax(true, false);
    sum += d.h_part.fields[i];
    sum += d.k_part.fields[i];
    sum += d.w_part.fields[i];
    recon = std::max(recon, max_abs_diff(sum, v.fields[i]));
    pw.x.push_back(t); pw.y.push_back(sobolev_norm(d.w_part.fields[i], 1.0));
    ph.x.push_back(t); ph.y.push_back(sobolev_norm(d.h_part.fields[i], 1.0));
    pk.x.push_back(t); pk.y.push_back(sobolev_norm(d.k_part.fields[i], 1.0));
  }
  const int n = f.max_freq();
  FourierField w0_check = d.w_part.fields.front();
  w0_check += t_bilinear(f, f, s, n);
  w0_check += j_trilinear(f, f, f, s, n);
  out.summary = {{"max_reconstruction_error", recon},
                 {"w0_identity_residual_l2", sobolev_norm(w0_check, 0.0)},
                 {"samples", v.size()}};
  emit(out, cfg, "decompose", csv, {pw, ph, pk}, {"normal-form parts", "t", "H1 norm"});
}

void run_smoothing(const RunConfig& cfg, RunArtifacts& out) {
  const json echo = config_to_json(cfg);
  const FourierField u0 = initial_data(cfg);
  const SmoothingReport rep = residual_report(u0, cfg.params, cfg.solver, cfg.smoothing.sigmas);
  Csv csv(echo, "experiment,t,sigma,N,value");
  for (const auto& r : rep.rows) {
    csv.row(std::string("unshifted"), r.t, r.sigma, rep.max_freq, r.unshifted);
    csv.row(std::string("shifted"), r.t, r.sigma, rep.max_freq, r.shifted);
  }
  const RefinementReport ref =
      refinement_study(cfg.params, cfg.seed, cfg.smoothing.Ns, cfg.solver, cfg.smoothing.sigma_test,
                       {cfg.data.amplitude, 0.2, 0.5, cfg.smoothing.l2_tol, cfg.smoothing.max_halvings});
  for (const auto& r : ref.rows) {
    csv.row(std::string("refine_unshifted"), ref.t, ref.sigma, r.max_freq, r.unshifted);
    csv.row(std::string("refine_shifted"), ref.t, ref.sigma, r.max_freq, r.shifted);
  }
  std::vector<PlotSeries> plot;
  if (!cfg.smoothing.sigmas.empty()) {
    const double sig = cfg.smoothing.sigmas.back();
    PlotSeries a{"unshifted", {}, {}}, b{"shifted", {}, {}};
    for (const auto& r : rep.rows)
      if (r.sigma == sig) {
        a.x.push_back(r.t); a.y.push_back(r.unshifted);
        b.x.push_back(r.t); b.y.push_back(r.shifted);
      }
    plot = {a, b};
  }
  json rows = json::array();
  for (const auto& r : ref.rows)
    rows.push_back({{"N", r.max_freq}, {"shifted", r.shifted}, {"unshifted", r.unshifted}, {"dt", r.dt},
                    {"l2_drift", r.l2_drift}});
  out.summary = {{"slopes", {{"initial", rep.slope_initial}, {"unshifted", rep.slope_unshifted},
                             {"shifted", rep.slope_shifted}}},
                 {"refinement", {{"sigma", ref.sigma}, {"t", ref.t}, {"rows", rows},
                                 {"shifted_variation", ref.shifted_variation},
                                 {"unshifted_min_growth", ref.unshifted_min_growth},
                                 {"shifted_stable", ref.shifted_stable},
                                 {"unshifted_grows", ref.unshifted_grows}}}};
  emit(out, cfg, "smoothing", csv, plot, {"residual norms", "t", "H^sigma norm"});
}

void run_multiplier(const RunConfig& cfg, RunArtifacts& out) {
  const json echo = config_to_json(cfg);
  Csv csv(echo, "spec,N,sup,argmax_xi1,argmax_xi2,argmax_xi3,evals,wall_ms");
  json trends = json::object();
  std::vector<PlotSeries> plot;
  for (const auto& name : cfg.multiplier.kinds) {
    const auto spec = MultiplierSpec::make(*parse_multiplier_kind(name), cfg.params, cfg.multiplier.eps);
    std::vector<ScanResult> scans;
    json entry;
    if (cfg.multiplier.Ns.size() >= 3) {
      const GrowthTrend g = growth_trend(spec, cfg.multiplier.Ns, cfg.threads);
      scans = g.scans;
      entry = {{"exponent", g.exponent}, {"growth_per_doubling", g.growth_per_doubling}};
    } else {
      for (int n : cfg.multiplier.Ns) scans.push_back(scan(spec, n, cfg.threads));
    }
    PlotSeries ps{name, {}, {}};
    json sups = json::array();
    for (const auto& r : scans) {
      csv.row(r.spec, r.box_size, r.sup, r.argmax[0], r.argmax[1], r.argmax[2], r.evaluations, r.wall_ms);
      ps.x.push_back(r.box_size);
      ps.y.push_back(r.sup);
      sups.push_back({{"N", r.box_size}, {"sup", r.sup}, {"argmax", r.argmax}});
    }
    entry["scans"] = sups;
    entry["constraints"] = spec.constraints();
    trends[name] = entry;
    plot.push_back(ps);
  }
  out.summary = {{"multipliers", trends}};
  PlotOptions opt{"multiplier suprema", "N", "sup", true, true};
  emit(out, cfg, "multipliers", csv, plot, opt);
}

void run_identity(const RunConfig& cfg, RunArtifacts& out) {
  const json echo = config_to_json(cfg);
  std::mt19937_64 rng(cfg.seed);
  const std::int64_t r = cfg.identity.range;
  const auto span = static_cast<std::uint64_t>(2 * r + 1);
  auto draw = [&] { return static_cast<std::int64_t>(rng() % span) - r; };
  Csv csv(echo, "xi1,xi2,xi3,tau1,tau2,tau3,lhs,rhs");
  int failures = 0;
  for (int i = 0; i < cfg.identity.count; ++i) {
    std::int64_t v[6];
    for (auto& x : v) x = draw();
    const CubicIdentity c = cubic_identity(v[0], v[1], v[2], v[3], v[4], v[5]);
    if (c.lhs != c.rhs) ++failures;
    csv.row(static_cast<long long>(v[0]), static_cast<long long>(v[1]), static_cast<long long>(v[2]),
            static_cast<long long>(v[3]), static_cast<long long>(v[4]), static_cast<long long>(v[5]),
            static_cast<long long>(c.lhs), static_cast<long long>(c.rhs));
  }
  out.summary = {{"count", cfg.identity.count}, {"failures", failures}};
  if (failures > 0) out.status = exit_code::numeric;
  emit(out, cfg, "identity", csv, {}, {});
}

void run_nonuniform(const RunConfig& cfg, RunArtifacts& out) {
  const json echo = config_to_json(cfg);
  const auto& nu = cfg.nonuniform;
  std::vector<double> ts;
  for (int i = 0; i < nu.points; ++i) ts.push_back(nu.t_max * i / (nu.points - 1));
  const NonuniformDemo demo = nonuniform_demo(nu.xi, nu.delta, cfg.params.s, ts);
  Csv csv(echo, "t,numeric,closed_form");
  PlotSeries a{"numeric", {}, {}}, b{"closed form", {}, {}};
  for (const auto& r : demo.rows) {
    csv.row(r.t, r.numeric, r.closed_form);
    a.x.push_back(r.t); a.y.push_back(r.numeric);
    b.x.push_back(r.t); b.y.push_back(r.closed_form);
  }
  out.summary = {{"max_discrepancy", demo.max_discrepancy}, {"tolerance", 1e-10}};
  if (!(demo.max_discrepancy <= 1e-10)) out.status = exit_code::numeric;
  emit(out, cfg, "nonuniform", csv, {a, b}, {"||R[f]-R[g]||", "t", "L2 distance"});
}

void run_xsb(const RunConfig& cfg, RunArtifacts& out) {
  const json echo = config_to_json(cfg);
  const double s = cfg.params.s;
  const int n = cfg.solver.max_freq;
  if (n < 2) throw ConfigError("solver.max_freq must be >= 2");
  FourierField f = apply_multiplier(random_rough_field(n, cfg.params, cfg.seed), MultiplierSymbol::bessel(-s));
  f = with_physical_l2(f, cfg.data.amplitude);
  const auto count = static_cast<std::size_t>(cfg.xsb.samples);
  const Trajectory airy = sample_flow([&](double t) { return airy_propagate(f, t); }, cfg.xsb.sample_dt, count);
  const Trajectory res = sample_flow([&](double t) { return r_evolve(f, s, t); }, cfg.xsb.sample_dt, count);
  XsbConfig xc;
  xc.b = cfg.xsb.b;
  xc.flat_fraction = cfg.xsb.flat_fraction;
  Csv csv(echo, "flow,N,b,sigma,value");
  json summary = json::object();
  for (const auto& [name, tr] : {std::pair<const char*, const Trajectory*>{"airy", &airy}, {"resonant", &res}}) {
    const double v = xsb_norm(*tr, xc, cfg.xsb.sigma);
    XsbConfig x0 = xc;
    x0.b = 0.0;
    const double v0 = xsb_norm(*tr, x0, cfg.xsb.sigma);
    const double l2 = windowed_l2_norm(*tr, xc, cfg.xsb.sigma);
    csv.row(std::string(name), n, xc.b, cfg.xsb.sigma, v);
    csv.row(std::string(name), n, 0.0, cfg.xsb.sigma, v0);
    summary[name] = {{"xsb", v}, {"xsb_b0", v0}, {"windowed_l2", l2}};
  }
  summary["f_l2"] = sobolev_norm(f, 0.0);
  summary["window"] = {{"type", "tukey"}, {"flat_fraction", xc.flat_fraction}};
  out.summary = summary;
  emit(out, cfg, "xsb", csv, {}, {});
}

}  // namespace

RunArtifacts compute(const RunConfig& cfg) {
  validate(cfg);
  RunArtifacts out;
  switch (cfg.command) {
    case Command::simulate: run_simulate(cfg, out); break;
    case Command::decompose: run_decompose(cfg, out); break;
    case Command::smoothing_scan: run_smoothing(cfg, out); break;
    case Command::multiplier_scan: run_multiplier(cfg, out); break;
    case Command::identity_check: run_identity(cfg, out); break;
    case Command::demo_nonuniform: run_nonuniform(cfg, out); break;
    case Command::xsb_diagnostic: run_xsb(cfg, out); break;
  }
  out.summary["config"] = config_to_json(cfg);
  out.summary["status"] = out.status == exit_code::ok ? "ok" : "check_failed";
  if (cfg.wants("json")) out.files["summary.json"] = out.summary.dump(2) + "\n";
  return out;
}

int run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::filesystem::path dir = cfg.out_dir;
  try {
    RunArtifacts art = compute(cfg);
    for (const auto& [name, content] : art.files) write_text(dir / name, content);
    const double wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json files = json::array();
    for (const auto& kv : art.files) files.push_back(kv.first);
    const json manifest = {{"command", to_string(cfg.command)}, {"config", config_to_json(cfg)},
                           {"seed", cfg.seed},           {"version", version()},
                           {"wall_ms", wall},            {"artifacts", files},
                           {"status", art.status == exit_code::ok ? "ok" : "check_failed"}};
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    log << to_string(cfg.command) << ": wrote " << art.files.size() << " artifacts to " << dir.string() << '\n';
    if (art.status != exit_code::ok) err << to_string(cfg.command) << ": built-in check failed\n";
    return art.status;
  } catch (const std::exception& e) {
    const json ej = error_json(e);
    err << ej.dump() << '\n';
    try {
      write_text(dir / "error.json", ej.dump(2) + "\n");
    } catch (const std::exception&) {
    }
    return exit_code_for(e);
  }
}

}  // namespace kdvlab
