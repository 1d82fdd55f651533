// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments
// restrict the run to the named criteria (e.g. `acceptance A1 A5`).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kdvlab/error.hpp"
#include "kdvlab/multiplier_lab.hpp"
#include "kdvlab/normal_form.hpp"
#include "kdvlab/random_field.hpp"
#include "kdvlab/smoothing_lab.hpp"
#include "kdvlab/solver.hpp"
#include "kdvlab/spectral.hpp"
#include "support.hpp"

using namespace kdvlab;
namespace kt = kdvlab::testing;

namespace {

constexpr double kTwoPi = 6.283185307179586;
const Complex I(0.0, 1.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* title;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

FourierField physical_unit(const FourierField& f) { return f.scaled(1.0 / (std::sqrt(kTwoPi) * sobolev_norm(f, 0.0))); }

Outcome cubic_identity_check() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> pick(-1000, 1000);
  long mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    std::int64_t v[6];
    for (auto& x : v) x = pick(rng);
    const CubicIdentity c = cubic_identity(v[0], v[1], v[2], v[3], v[4], v[5]);
    if (c.lhs != c.rhs) ++mismatches;
  }
  return {mismatches == 0, fmt("%ld mismatches in 10000 tuples", mismatches)};
}

Outcome conservation_check() {
  const RegularityParams p;
  const FourierField u0 = physical_unit(random_rough_field(256, p, 11));
  SolverConfig cfg;
  cfg.max_freq = 256;
  cfg.dt = 1.6e-6;  // smallest step that fits the time budget
  cfg.t_end = 1.0;
  cfg.sample_stride = 6250;
  const Trajectory traj = evolve(u0, cfg);
  const ConservedQuantities q0 = conserved_quantities(u0);
  double mean = 0, l2 = 0, ham = 0;
  for (const auto& f : traj.fields) {
    const ConservedQuantities q = conserved_quantities(f);
    mean = std::max(mean, std::abs(q.mean - q0.mean));
    l2 = std::max(l2, std::abs(std::sqrt(q.l2) - std::sqrt(q0.l2)) / std::sqrt(q0.l2));
    ham = std::max(ham, std::abs(q.hamiltonian - q0.hamiltonian) / std::abs(q0.hamiltonian));
  }
  const bool ok = mean == 0.0 && l2 <= 1e-8 && ham <= 1e-6;
  return {ok, fmt("dt=%.1e mean drift %.1e, L2 drift %.2e (tol 1e-8), H drift %.2e (tol 1e-6)", cfg.dt, mean, l2,
                  ham)};
}

Outcome symbol_cancellation_check() {
  const int box = 32;
  double worst = 0.0;
  long count = 0;
  for (double s : {0.0, 0.25, 0.45})
    for (long long a = -box; a <= box; ++a)
      for (long long b = -box; b <= box; ++b) {
        if (a == 0 || b == 0 || a + b == 0) continue;
        const Complex nl = nonlinearity_symbol(a, b, s);
        const Complex t = t_symbol(a, b, s) * (-3.0 * I * double(a * b * (a + b)));
        worst = std::max(worst, std::abs(t - nl) / std::abs(nl));
        ++count;
        for (long long c = -box; c <= box; ++c) {
          if (!kt::nonresonant(a, b, c)) continue;
          const Complex nr = -2.0 * nr_symbol(a, b, c, s);
          const Complex j = j_symbol(a, b, c, s) * (-3.0 * I * double((a + b) * (b + c) * (c + a)));
          worst = std::max(worst, std::abs(j - nr) / std::abs(nr));
          ++count;
        }
      }
  return {worst <= 1e-13, fmt("%ld tuples, worst relative defect %.2e", count, worst)};
}

Outcome phase_inversion_check() {
  const RegularityParams p;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const FourierField u0 = physical_unit(random_rough_field(128, p, seed));
    for (double t : {0.1, 1.0, 10.0}) {
      const FourierField diff = phase_shift(r_star(u0, t), u0, t) - airy_propagate(u0, t);
      for (double sigma : {-p.s, 0.0}) worst = std::max(worst, sobolev_norm(diff, sigma));
    }
  }
  return {worst <= 1e-12, fmt("worst H^sigma residual %.2e over 300 cases", worst)};
}

Outcome nonuniform_check() {
  std::vector<double> ts(100);
  for (int i = 0; i < 100; ++i) ts[i] = 10.0 * i / 99.0;
  double worst = 0.0;
  for (int xi : {1, -3, 17})
    for (double delta : {0.1, 0.5}) worst = std::max(worst, nonuniform_demo(xi, delta, 0.25, ts).max_discrepancy);
  return {worst <= 1e-10, fmt("max discrepancy %.2e", worst)};
}

Outcome multiplier_check() {
  const RegularityParams p = RegularityParams::make(0.25, 0.02);
  const std::vector<int> Ns = {128, 256, 512, 1024};
  std::ostringstream os;
  bool ok = true;
  for (MultiplierKind kind : all_multiplier_kinds()) {
    const GrowthTrend g = growth_trend(MultiplierSpec::make(kind, p), Ns, worker_count());
    double worst = 0.0;
    for (double r : g.growth_per_doubling) worst = std::max(worst, r);
    ok = ok && worst <= 0.10;
    os << to_string(kind) << ' ' << fmt("%+.3f", worst) << "; ";
  }
  const GrowthTrend m1 = growth_trend(MultiplierSpec::make(MultiplierKind::M1, 0.2, 0.05, 1.0), Ns, worker_count());
  const double target = 1.0 + 7 * 0.05 - 1.0;
  ok = ok && std::abs(m1.exponent - target) <= 0.1;
  os << fmt("M1 exponent %.3f (target %.2f)", m1.exponent, target);
  return {ok, "worst growth per doubling: " + os.str()};
}

Outcome smoothing_check() {
  const RegularityParams law = RegularityParams::make(0.25, 0.02);
  SolverConfig cfg;
  cfg.t_end = 1.0;
  cfg.sample_stride = 1;
  RefinementOptions opt;
  opt.l2_tol = 1e-2;
  const double sigma = -law.s + 0.9;
  const RefinementReport r = refinement_study(law, 5, {128, 256, 512}, cfg, sigma, opt);
  std::ostringstream os;
  for (const auto& row : r.rows)
    os << fmt("N=%d shifted %.3f unshifted %.3f (dt %.1e); ", row.max_freq, row.shifted, row.unshifted, row.dt);
  os << fmt("shifted variation %.2f (tol 0.20), unshifted min growth %.2f (need 1.50)", r.shifted_variation,
            r.unshifted_min_growth);
  return {r.shifted_stable && r.unshifted_grows, os.str()};
}

// Nested data share one scale: unit L2 at the coarsest N.
Outcome operator_regularity_check() {
  const RegularityParams p;
  std::vector<double> tn, jn, tn_renorm, jn_renorm;
  double scale = 0.0;
  for (int n : {128, 256, 512}) {
    const FourierField raw = apply_multiplier(random_rough_field(n, p, 21), MultiplierSymbol::bessel(-p.s));
    const double l2 = std::sqrt(kTwoPi) * sobolev_norm(raw, 0.0);
    if (scale == 0.0) scale = 1.0 / l2;
    const FourierField f = raw.scaled(scale), g = raw.scaled(1.0 / l2);
    tn.push_back(sobolev_norm(t_bilinear(f, f, p.s, {}, EvalMethod::transform), 1.0));
    jn.push_back(sobolev_norm(j_trilinear(f, f, f, p.s, {}, EvalMethod::transform), 1.0));
    tn_renorm.push_back(sobolev_norm(t_bilinear(g, g, p.s, {}, EvalMethod::transform), 1.0));
    jn_renorm.push_back(sobolev_norm(j_trilinear(g, g, g, p.s, {}, EvalMethod::transform), 1.0));
  }
  auto spread = [](const std::vector<double>& v) {
    double lo = v[0], hi = v[0];
    for (double x : v) lo = std::min(lo, x), hi = std::max(hi, x);
    return (hi - lo) / lo;
  };
  const double st = spread(tn), sj = spread(jn);
  return {st <= 0.1 && sj <= 0.1,
          fmt("T: %.4f %.4f %.4f (spread %.3f); J: %.5f %.5f %.5f (spread %.3f); "
              "renormalized per N: T spread %.3f, J spread %.3f",
              tn[0], tn[1], tn[2], st, jn[0], jn[1], jn[2], sj, spread(tn_renorm), spread(jn_renorm))};
}

Outcome phase_gain_check() {
  const RegularityParams p = RegularityParams::make(0.25, 0.02);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> time(0.0, 1.0), alpha(-0.5, 1.0);
  int holds = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const FourierField u0 = random_rough_field(128, p, 100 + i).scaled(1.0 + 4.0 * (i % 3));
    const FourierField v = kt::gaussian_field(128, 200 + i);
    const PhaseGain g = phase_gain_probe(u0, v, p, time(rng), alpha(rng));
    holds += g.holds();
    if (g.rhs > 0) worst = std::max(worst, g.lhs / g.rhs);
  }
  return {holds == 50, fmt("%d/50 hold, worst lhs/rhs %.3f", holds, worst)};
}

Outcome oracle_equivalence_check() {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 4 << (i % 4);  // 4, 8, 16, 32
    const bool real = i % 2 == 0;
    const double s = 0.1 * (i % 5);
    const FourierField u = kt::gaussian_field(n, 300 + i, real), v = kt::gaussian_field(n, 400 + i, real),
                       w = kt::gaussian_field(n, 500 + i, real);
    worst = std::max(worst, kt::rel_diff(t_bilinear(u, v, s, {}, EvalMethod::direct),
                                         t_bilinear(u, v, s, {}, EvalMethod::transform)));
    worst = std::max(worst, kt::rel_diff(j_trilinear(u, v, w, s, {}, EvalMethod::direct),
                                         j_trilinear(u, v, w, s, {}, EvalMethod::transform)));
  }
  return {worst <= 1e-12, fmt("worst relative difference %.2e over 50 inputs", worst)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"A1", "cubic algebraic identity", 1, cubic_identity_check},
      {"A2", "conservation at N=256", 30, conservation_check},
      {"A3", "normal-form symbol cancellations", 10, symbol_cancellation_check},
      {"A4", "phase-shift inversion", 5, phase_inversion_check},
      {"A5", "non-uniform closed form", 1, nonuniform_check},
      {"A6", "multiplier certification", 600, multiplier_check},
      {"A7", "smoothing discrimination", 300, smoothing_check},
      {"A8", "operator regularity stability", 60, operator_regularity_check},
      {"A9", "phase-gain inequality", 5, phase_gain_check},
      {"A10", "transform vs direct evaluation", 30, oracle_equivalence_check},
  };
  std::set<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    failed += !pass;
    std::printf("%s %-4s %s: %s [%.2f s of %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.title, out.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
