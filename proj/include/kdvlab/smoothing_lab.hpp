#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kdvlab/fourier_field.hpp"
#include "kdvlab/params.hpp"
#include "kdvlab/solver.hpp"

namespace kdvlab {

/// Least-squares slope of log|a_xi| against log<xi> over the band
/// [lo, hi] (default [N/8, N/4]). Magnitudes are averaged (RMS) in up to
/// eight log-uniform bins before fitting. Requires hi <= 2N/3, hi >= 2 lo
/// and at least two nonzero bins.
double tail_slope(const FourierField& field, std::optional<std::pair<int, int>> band = std::nullopt);

struct ResidualRow {
  double t = 0.0;
  double sigma = 0.0;
  double unshifted = 0.0;  // ||u(t) - airy(u0, t)||_{H^sigma}
  double shifted = 0.0;    // ||S[u](t) - airy(u0, t)||_{H^sigma}
};

struct SmoothingReport {
  int max_freq = 0;
  double s = 0.0;
  std::vector<ResidualRow> rows;
  double slope_initial = 0.0;
  /// Tail slopes of the two residuals at the final sample; NaN when a
  /// residual vanishes identically.
  double slope_unshifted = 0.0;
  double slope_shifted = 0.0;
};

/// Evolves u0 and measures both residuals at every sample and every sigma.
SmoothingReport residual_report(const FourierField& u0, const RegularityParams& params, const SolverConfig& cfg,
                                const std::vector<double>& sigma_grid);

struct RefinementRow {
  int max_freq = 0;
  double shifted = 0.0;
  double unshifted = 0.0;
  double dt = 0.0;        // step actually used
  double l2_drift = 0.0;  // relative L2 drift at t_end
};

struct RefinementReport {
  double sigma = 0.0;
  double t = 0.0;
  std::vector<RefinementRow> rows;
  /// (max - min) / min of the shifted norm over the rows.
  double shifted_variation = 0.0;
  /// Smallest ratio unshifted(N_{i+1}) / unshifted(N_i).
  double unshifted_min_growth = 0.0;
  bool shifted_stable = false;   // shifted_variation <= stable_tol
  bool unshifted_grows = false;  // unshifted_min_growth >= 1 + growth_tol
};

struct RefinementOptions {
  /// Physical L2 norm of the coarsest field; the same factor scales every N.
  double amplitude = 1.0;
  double stable_tol = 0.2;
  double growth_tol = 0.5;
  /// Accuracy gate: dt is halved until the relative L2 drift at t_end is at
  /// most l2_tol, at most max_halvings times beyond the CFL step.
  double l2_tol = 1e-2;
  int max_halvings = 8;
};

/// Residual norms at cfg.t_end from nested data random_rough_field(N, law,
/// seed) for each N. cfg is a template: max_freq is replaced by N and dt is
/// halved until it satisfies the CFL limit and the L2 drift gate; Ns must
/// double. Throws NumericError when the gate cannot be met.
RefinementReport refinement_study(const RegularityParams& law, std::uint64_t seed, const std::vector<int>& Ns,
                                  const SolverConfig& cfg, double sigma, const RefinementOptions& opt = {});

struct NonuniformRow {
  double t = 0.0;
  double numeric = 0.0;
  double closed_form = 0.0;
};

struct NonuniformDemo {
  std::vector<NonuniformRow> rows;
  double max_discrepancy = 0.0;
};

/// ||R[f](t) - R[g](t)||_{L2} for f = e^{i xi x}, g = (1 - delta) f, against
/// sqrt(delta^2 + 4 (1 - delta) sin^2((<xi>^{2s}/xi) delta (2 - delta) t)).
NonuniformDemo nonuniform_demo(int xi, double delta, double s, const std::vector<double>& t_grid);

/// Closed form used by nonuniform_demo.
double nonuniform_closed_form(int xi, double delta, double s, double t);

struct LipschitzProbe {
  bool identical = false;  // f == g: every difference is exactly zero
  double max_ratio = 0.0;
  double max_numerator = 0.0;
  double denominator = 0.0;
};

/// sup_t ||R[f](t) - R[g](t)||_{H^gamma} / ||f - g||_{H^gamma}.
LipschitzProbe lipschitz_probe(const FourierField& f, const FourierField& g, double s, double gamma,
                               const std::vector<double>& t_grid);

struct PhaseGain {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds() const noexcept { return lhs <= rhs; }
};

/// lhs = ||S[v](t) - v||_{H^{alpha + 1 - 2s}} with the phase shift built
/// from u0; rhs = 4 |t| ||u0||^2_{H^{-s}} ||v||_{H^alpha}.
PhaseGain phase_gain_probe(const FourierField& u0, const FourierField& v, const RegularityParams& params, double t,
                           double alpha);

struct XsbConfig {
  double b = 0.5;
  /// Fraction of the window that is flat (Tukey parameter 1 - flat).
  double flat_fraction = 0.5;
  /// Samples covered by the window, starting at the first; 0 means all.
  std::size_t window_samples = 0;
  std::size_t min_samples = 256;
};

/// Discrete X^{sigma,b} norm: each mode is demodulated by e^{-i xi^3 t},
/// windowed, transformed in time, and weighted by <xi>^{2 sigma} <lambda>^{2b}
/// with lambda the dual (modulation) frequency:
///   norm^2 = sum_xi <xi>^{2 sigma} (dt / M) sum_k <lambda_k>^{2b} |X_k|^2.
/// With b = 0 this is the windowed L^2_t H^sigma quadrature.
double xsb_norm(const Trajectory& traj, const XsbConfig& cfg, double sigma);

/// Windowed L^2_t H^sigma quadrature dt sum_j w_j^2 ||u(t_j)||^2_{H^sigma}.
double windowed_l2_norm(const Trajectory& traj, const XsbConfig& cfg, double sigma);

/// Samples t -> fn(t) on times k * dt, k = 0..count-1, as a Trajectory.
template <class Fn>
Trajectory sample_flow(Fn&& fn, double dt, std::size_t count) {
  Trajectory tr;
  tr.config.dt = dt;
  tr.config.sample_stride = 1;
  tr.config.t_end = dt * static_cast<double>(count > 0 ? count - 1 : 0);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = dt * static_cast<double>(k);
    tr.times.push_back(t);
    tr.fields.push_back(fn(t));
  }
  if (!tr.fields.empty()) tr.config.max_freq = tr.fields.front().max_freq();
  return tr;
}

}  // namespace kdvlab
