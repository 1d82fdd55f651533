#include "kdvlab/smoothing_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fft.hpp"
#include "kdvlab/error.hpp"
#include "kdvlab/normal_form.hpp"
#include "kdvlab/random_field.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab {

double tail_slope(const FourierField& field, std::optional<std::pair<int, int>> band) {
  const int n = field.max_freq();
  const auto [lo, hi] = band.value_or(std::pair<int, int>{n / 8, n / 4});
  if (lo < 1 || hi < lo) throw_precondition("tail_slope: empty band");
  if (3 * hi > 2 * n) throw_precondition("tail_slope: band must end at or below 2N/3");
  if (hi < 2 * lo) throw_precondition("tail_slope: band must span at least one octave");

  constexpr int kMaxBins = 8;
  const double llo = std::log(static_cast<double>(lo));
  const double lhi = std::log(static_cast<double>(hi) + 1.0);
  const int bins = std::min(kMaxBins, hi - lo + 1);
  std::vector<double> sum_sq(bins, 0.0), sum_log(bins, 0.0);
  std::vector<int> count(bins, 0);
  for (int xi = lo; xi <= hi; ++xi) {
    int b = static_cast<int>((std::log(static_cast<double>(xi)) - llo) / (lhi - llo) * bins);
    b = std::clamp(b, 0, bins - 1);
    const double mag2 = field.is_real() ? std::norm(field[xi]) : 0.5 * (std::norm(field[xi]) + std::norm(field[-xi]));
    sum_sq[b] += mag2;
    sum_log[b] += std::log(bracket(xi));
    ++count[b];
  }
  std::vector<double> x, y;
  for (int b = 0; b < bins; ++b) {
    if (count[b] == 0 || sum_sq[b] == 0.0) continue;
    x.push_back(sum_log[b] / count[b]);
    y.push_back(0.5 * std::log(sum_sq[b] / count[b]));
  }
  if (x.size() < 2) throw NumericError("tail_slope: fewer than two nonzero bins in the band");
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

namespace {

double slope_or_nan(const FourierField& f) {
  try {
    return tail_slope(f);
  } catch (const NumericError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double sobolev_distance(const FourierField& a, const FourierField& b, double sigma) {
  FourierField d = a;
  d.relax(a.is_real() && b.is_real(), a.is_mean_zero() && b.is_mean_zero());
  d -= b;
  return sobolev_norm(d, sigma);
}

}  // namespace

SmoothingReport residual_report(const FourierField& u0, const RegularityParams& params, const SolverConfig& cfg,
                                const std::vector<double>& sigma_grid) {
  const Trajectory traj = evolve(u0, cfg);
  SmoothingReport rep;
  rep.max_freq = u0.max_freq();
  rep.s = params.s;
  FourierField last_unshifted, last_shifted;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const FourierField& u = traj.fields[i];
    const FourierField airy = airy_propagate(u0, t);
    FourierField unshifted = u - airy;
    FourierField shifted = phase_shift(u, u0, t) - airy;
    for (double sigma : sigma_grid)
      rep.rows.push_back({t, sigma, sobolev_norm(unshifted, sigma), sobolev_norm(shifted, sigma)});
    last_unshifted = std::move(unshifted);
    last_shifted = std::move(shifted);
  }
  rep.slope_initial = slope_or_nan(u0);
  rep.slope_unshifted = slope_or_nan(last_unshifted);
  rep.slope_shifted = slope_or_nan(last_shifted);
  return rep;
}

RefinementReport refinement_study(const RegularityParams& law, std::uint64_t seed, const std::vector<int>& Ns,
                                  const SolverConfig& cfg, double sigma, const RefinementOptions& opt) {
  if (Ns.size() < 2) throw_precondition("refinement_study: need at least two grid sizes");
  for (std::size_t i = 1; i < Ns.size(); ++i)
    if (Ns[i] != 2 * Ns[i - 1]) throw_precondition("refinement_study: grid sizes must double");
  RefinementReport rep;
  rep.sigma = sigma;
  rep.t = cfg.t_end;
  // One scale factor for every N keeps the data nested.
  const FourierField coarse = random_rough_field(Ns.front(), law, seed);
  const double scale = opt.amplitude / (std::sqrt(2.0 * std::numbers::pi) * sobolev_norm(coarse, 0.0));
  FourierField previous;
  for (int n : Ns) {
    const FourierField u0 = random_rough_field(n, law, seed).scaled(scale);
    if (previous.max_freq() > 0 && !(u0.truncated(previous.max_freq()) == previous))
      throw_precondition("refinement_study: data law is not nested across grid sizes");
    SolverConfig c = cfg;
    c.max_freq = n;
    c.sample_stride = 1;
    for (int k = 0; k < 30 && c.nonlinear && c.dt > cfl_limit(u0, c); ++k) c.dt *= 0.5;
    const double l2_0 = sobolev_norm(u0, 0.0);
    FourierField u;
    double drift = std::numeric_limits<double>::infinity();
    for (int halvings = 0;; ++halvings, c.dt *= 0.5) {
      try {
        u = evolve_final(u0, c);
        drift = l2_0 > 0.0 ? std::abs(sobolev_norm(u, 0.0) - l2_0) / l2_0 : 0.0;
      } catch (const NumericError&) {
        drift = std::numeric_limits<double>::infinity();
      }
      if (drift <= opt.l2_tol) break;
      if (halvings == opt.max_halvings)
        throw NumericError("refinement_study: L2 drift gate not met at N = " + std::to_string(n));
    }
    const FourierField airy = airy_propagate(u0, c.t_end);
    rep.rows.push_back({n, sobolev_norm(phase_shift(u, u0, c.t_end) - airy, sigma),
                        sobolev_norm(u - airy, sigma), c.dt, drift});
    previous = u0;
  }
  double lo = rep.rows.front().shifted, hi = lo;
  rep.unshifted_min_growth = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    lo = std::min(lo, rep.rows[i].shifted);
    hi = std::max(hi, rep.rows[i].shifted);
    if (i > 0)
      rep.unshifted_min_growth =
          std::min(rep.unshifted_min_growth, rep.rows[i].unshifted / rep.rows[i - 1].unshifted);
  }
  rep.shifted_variation = lo > 0.0 ? (hi - lo) / lo : std::numeric_limits<double>::infinity();
  rep.shifted_stable = rep.shifted_variation <= opt.stable_tol;
  rep.unshifted_grows = rep.unshifted_min_growth >= 1.0 + opt.growth_tol;
  return rep;
}

double nonuniform_closed_form(int xi, double delta, double s, double t) {
  const double c = std::pow(bracket(xi), 2.0 * s) / xi;
  const double sn = std::sin(c * delta * (2.0 - delta) * t);
  return std::sqrt(delta * delta + 4.0 * (1.0 - delta) * sn * sn);
}

NonuniformDemo nonuniform_demo(int xi, double delta, double s, const std::vector<double>& t_grid) {
  if (xi == 0) throw_precondition("nonuniform_demo: xi must be nonzero");
  if (!(delta > 0.0 && delta < 1.0)) throw_precondition("nonuniform_demo: delta must lie in (0, 1)");
  const int n = std::abs(xi);
  FourierField f(n, false, true);
  f.set(xi, Complex(1.0, 0.0));
  const FourierField g = f.scaled(1.0 - delta);
  NonuniformDemo demo;
  for (double t : t_grid) {
    const double numeric = sobolev_norm(r_evolve(f, s, t) - r_evolve(g, s, t), 0.0);
    const double closed = nonuniform_closed_form(xi, delta, s, t);
    demo.rows.push_back({t, numeric, closed});
    demo.max_discrepancy = std::max(demo.max_discrepancy, std::abs(numeric - closed));
  }
  return demo;
}

LipschitzProbe lipschitz_probe(const FourierField& f, const FourierField& g, double s, double gamma,
                               const std::vector<double>& t_grid) {
  if (f.max_freq() != g.max_freq()) throw_precondition("lipschitz_probe: fields differ in max_freq");
  if (!f.is_mean_zero() || !g.is_mean_zero()) throw_precondition("lipschitz_probe: fields must be mean-zero");
  LipschitzProbe p;
  p.denominator = sobolev_distance(f, g, gamma);
  p.identical = f == g;
  for (double t : t_grid) {
    const double num = sobolev_distance(r_evolve(f, s, t), r_evolve(g, s, t), gamma);
    p.max_numerator = std::max(p.max_numerator, num);
  }
  if (p.denominator > 0.0) p.max_ratio = p.max_numerator / p.denominator;
  return p;
}

PhaseGain phase_gain_probe(const FourierField& u0, const FourierField& v, const RegularityParams& params, double t,
                           double alpha) {
  if (!u0.is_mean_zero()) throw_precondition("phase_gain_probe: u0 must be mean-zero");
  PhaseGain pg;
  pg.lhs = sobolev_distance(phase_shift(v, u0, t), v, alpha + 1.0 - 2.0 * params.s);
  const double u_norm = sobolev_norm(u0, -params.s);
  pg.rhs = 4.0 * std::abs(t) * u_norm * u_norm * sobolev_norm(v, alpha);
  return pg;
}

namespace {

std::vector<double> tukey(std::size_t m, double flat_fraction) {
  std::vector<double> w(m, 1.0);
  const double taper = 1.0 - flat_fraction;
  if (m < 2 || taper <= 0.0) return w;
  for (std::size_t j = 0; j < m; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(m - 1);
    if (x < taper / 2.0)
      w[j] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * x / taper));
    else if (x > 1.0 - taper / 2.0)
      w[j] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * (1.0 - x) / taper));
  }
  return w;
}

std::size_t window_length(const Trajectory& traj, const XsbConfig& cfg) {
  if (traj.size() < cfg.min_samples)
    throw_precondition("xsb_norm: trajectory has fewer than " + std::to_string(cfg.min_samples) + " samples");
  if (cfg.window_samples > traj.size()) throw_precondition("xsb_norm: window is wider than the sampled span");
  if (!(cfg.flat_fraction >= 0.0 && cfg.flat_fraction <= 1.0))
    throw_precondition("xsb_norm: flat_fraction must lie in [0, 1]");
  if (!(cfg.b >= 0.0)) throw_precondition("xsb_norm: b must be >= 0");
  return cfg.window_samples == 0 ? traj.size() : cfg.window_samples;
}

}  // namespace

double xsb_norm(const Trajectory& traj, const XsbConfig& cfg, double sigma) {
  const std::size_t m = window_length(traj, cfg);
  const std::vector<double> w = tukey(m, cfg.flat_fraction);
  const double dt = traj.sample_dt();
  const int n = traj.fields.front().max_freq();
  std::vector<double> weight(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double ks = k <= m / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(m);
    const double lambda = 2.0 * std::numbers::pi * ks / (static_cast<double>(m) * dt);
    weight[k] = std::pow(1.0 + std::abs(lambda), 2.0 * cfg.b);
  }
  detail::AlignedBuffer<Complex> in(m), out(m);
  double total = 0.0;
  for (int xi = -n; xi <= n; ++xi) {
    bool any = false;
    for (std::size_t j = 0; j < m; ++j) {
      const Complex a = traj.fields[j][xi];
      any |= a != Complex{};
      in[j] = w[j] * (a * std::conj(airy_symbol(xi, traj.times[j])));
    }
    if (!any) continue;
    detail::dft(m, -1, in.data(), out.data());
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) acc += weight[k] * std::norm(out[k]);
    total += std::pow(bracket(xi), 2.0 * sigma) * (dt / static_cast<double>(m)) * acc;
  }
  return std::sqrt(total);
}

double windowed_l2_norm(const Trajectory& traj, const XsbConfig& cfg, double sigma) {
  const std::size_t m = window_length(traj, cfg);
  const std::vector<double> w = tukey(m, cfg.flat_fraction);
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double nrm = sobolev_norm(traj.fields[j], sigma);
    total += w[j] * w[j] * nrm * nrm;
  }
  return std::sqrt(traj.sample_dt() * total);
}

}  // namespace kdvlab
