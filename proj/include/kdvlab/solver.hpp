#pragma once

#include <string>
#include <vector>

#include "kdvlab/fourier_field.hpp"

namespace kdvlab {

/// Time stepping setup for u_t + u_xxx = d_x(u^2).
///
/// The linear part is integrated exactly, so the only stability limit is the
/// advective one: dt <= c_cfl / (N (1 + max|u0|)).
struct SolverConfig {
  enum class Integrator { if_rk4 };

  int max_freq = 64;
  double dt = 5e-4;
  double t_end = 1.0;
  int sample_stride = 20;
  Integrator integrator = Integrator::if_rk4;
  double c_cfl = 0.5;
  /// false switches to the linear (Airy) flow, used as a test mode.
  bool nonlinear = true;

  /// Number of steps; t_end must be an integer multiple of dt * sample_stride.
  long long steps() const;
  /// Throws ConfigError on non-positive values or a t_end that is not a
  /// whole number of sample intervals.
  void validate() const;
};

const char* to_string(SolverConfig::Integrator integrator);

/// Samples of a flow at uniformly spaced times.
struct Trajectory {
  std::vector<double> times;
  std::vector<FourierField> fields;
  SolverConfig config;

  std::size_t size() const noexcept { return times.size(); }
  /// Spacing between consecutive samples.
  double sample_dt() const noexcept { return config.dt * config.sample_stride; }
};

/// a_xi -> e^{i xi^3 t} a_xi.
FourierField airy_propagate(const FourierField& field, double t);

/// Largest admissible step for the given data.
double cfl_limit(const FourierField& u0, const SolverConfig& cfg);

/// Integrating-factor RK4 from u0 (real, mean-zero, max_freq == cfg.max_freq).
/// Sample k is taken at time k * sample_stride * dt; sample 0 is u0.
/// Throws ConfigError on a CFL violation before any step is taken.
Trajectory evolve(const FourierField& u0, const SolverConfig& cfg);

/// State at cfg.t_end only.
FourierField evolve_final(const FourierField& u0, const SolverConfig& cfg);

/// Runs the flow backwards in time by t_end, using the symmetry
/// u(x, t) -> u(-x, -t) of the equation.
FourierField evolve_backward(const FourierField& u_end, const SolverConfig& cfg);

struct ConservedQuantities {
  double mean = 0.0;
  double l2 = 0.0;           // integral of u^2
  double hamiltonian = 0.0;  // integral of u_x^2 / 2 + u^3 / 3
};

/// Physical integrals over [0, 2pi) for a real field.
ConservedQuantities conserved_quantities(const FourierField& field);

struct ConvergenceReport {
  enum class Kind { temporal, spatial };
  Kind kind = Kind::temporal;
  /// dt values (temporal) or N values (spatial), in the order given.
  std::vector<double> parameter;
  /// errors[i] compares run i with run i + 1 (temporal) or with the finest
  /// run (spatial), in the coefficient L2 norm at t_end.
  std::vector<double> errors;
  /// errors[i] / errors[i + 1].
  std::vector<double> ratios;
  /// Least-squares slope of log error vs log dt (temporal) or log N
  /// (spatial, negative for algebraic decay). NaN when errors vanish.
  double fitted_order = 0.0;
};

/// Runs every configuration from the same data. Configurations must differ
/// only in dt, or only in max_freq (u0 is truncated or zero-extended).
ConvergenceReport convergence_study(const FourierField& u0, const std::vector<SolverConfig>& cfgs);

}  // namespace kdvlab
