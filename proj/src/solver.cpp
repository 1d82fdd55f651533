#include "kdvlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kdvlab/error.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab {

long long SolverConfig::steps() const { return std::llround(t_end / dt); }

void SolverConfig::validate() const {
  if (max_freq < 1) throw ConfigError("solver: max_freq must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("solver: dt must be > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("solver: t_end must be > 0");
  if (sample_stride < 1) throw ConfigError("solver: sample_stride must be >= 1");
  if (!(c_cfl > 0.0)) throw ConfigError("solver: c_cfl must be > 0");
  const long long n = steps();
  if (n < 1 || std::abs(static_cast<double>(n) * dt - t_end) > 1e-9 * t_end)
    throw ConfigError("solver: t_end must be an integer multiple of dt");
  if (n % sample_stride != 0)
    throw ConfigError("solver: the step count must be a multiple of sample_stride");
}

const char* to_string(SolverConfig::Integrator integrator) {
  switch (integrator) {
    case SolverConfig::Integrator::if_rk4: return "if_rk4";
  }
  return "unknown";
}

FourierField airy_propagate(const FourierField& field, double t) {
  const int n = field.max_freq();
  std::vector<Complex> c(static_cast<std::size_t>(2 * n + 1));
  for (int xi = -n; xi <= n; ++xi) c[static_cast<std::size_t>(n + xi)] = field[xi] * airy_symbol(xi, t);
  if (field.is_real()) {
    for (int xi = 1; xi <= n; ++xi) c[static_cast<std::size_t>(n - xi)] = std::conj(c[static_cast<std::size_t>(n + xi)]);
  }
  return FourierField(n, std::move(c), field.is_real(), field.is_mean_zero());
}

double cfl_limit(const FourierField& u0, const SolverConfig& cfg) {
  return cfg.c_cfl / (static_cast<double>(cfg.max_freq) * (1.0 + grid_max_abs(u0)));
}

namespace {

// State of a real mean-zero field: modes xi = 0..N, with a_0 == 0.
using State = std::vector<Complex>;

FourierField to_field(const State& a, int n) {
  std::vector<Complex> c(static_cast<std::size_t>(2 * n + 1));
  for (int xi = 1; xi <= n; ++xi) {
    c[static_cast<std::size_t>(n + xi)] = a[static_cast<std::size_t>(xi)];
    c[static_cast<std::size_t>(n - xi)] = std::conj(a[static_cast<std::size_t>(xi)]);
  }
  return FourierField(n, std::move(c), true, true);
}

State from_field(const FourierField& f) {
  State a(static_cast<std::size_t>(f.max_freq() + 1));
  for (int xi = 1; xi <= f.max_freq(); ++xi) a[static_cast<std::size_t>(xi)] = f[xi];
  return a;
}

class IfRk4 {
 public:
  IfRk4(int n, double dt) : n_(n), dt_(dt), half_(n + 1), full_(n + 1), k1_(n + 1), k2_(n + 1), k3_(n + 1),
                            k4_(n + 1), tmp_(n + 1) {
    for (int xi = 0; xi <= n; ++xi) {
      half_[static_cast<std::size_t>(xi)] = airy_symbol(xi, 0.5 * dt);
      full_[static_cast<std::size_t>(xi)] = airy_symbol(xi, dt);
    }
  }

  // d/dt a_xi = i xi (u^2)_xi, the nonlinear part in Fourier variables.
  void rhs(const State& a, State& out) const {
    for (const Complex& z : a)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NumericError("evolve: non-finite state (reduce dt)");
    const FourierField u = to_field(a, n_);
    const FourierField sq = dealiased_product(u, u);
    out[0] = Complex{};
    for (int xi = 1; xi <= n_; ++xi) {
      const Complex p = sq[xi];
      out[static_cast<std::size_t>(xi)] = Complex(-p.imag() * xi, p.real() * xi);
    }
  }

  void step(State& a) {
    const std::size_t m = a.size();
    const double h = dt_;
    rhs(a, k1_);
    for (std::size_t j = 0; j < m; ++j) tmp_[j] = half_[j] * (a[j] + 0.5 * h * k1_[j]);
    rhs(tmp_, k2_);
    for (std::size_t j = 0; j < m; ++j) tmp_[j] = half_[j] * a[j] + 0.5 * h * k2_[j];
    rhs(tmp_, k3_);
    for (std::size_t j = 0; j < m; ++j) tmp_[j] = full_[j] * a[j] + h * half_[j] * k3_[j];
    rhs(tmp_, k4_);
    for (std::size_t j = 0; j < m; ++j)
      a[j] = full_[j] * a[j] +
             (h / 6.0) * (full_[j] * k1_[j] + 2.0 * half_[j] * (k2_[j] + k3_[j]) + k4_[j]);
    a[0] = Complex{};
  }

 private:
  int n_;
  double dt_;
  State half_, full_, k1_, k2_, k3_, k4_, tmp_;
};

void check_initial(const FourierField& u0, const SolverConfig& cfg) {
  cfg.validate();
  if (u0.max_freq() != cfg.max_freq) throw_precondition("evolve: u0.max_freq differs from the config");
  if (!u0.is_real() || !u0.is_mean_zero()) throw_precondition("evolve: u0 must be real and mean-zero");
  if (cfg.nonlinear && cfg.dt > cfl_limit(u0, cfg))
    throw ConfigError("evolve: dt = " + std::to_string(cfg.dt) + " violates the CFL limit " +
                      std::to_string(cfl_limit(u0, cfg)));
}

template <class Sink>
void run(const FourierField& u0, const SolverConfig& cfg, Sink&& sink) {
  check_initial(u0, cfg);
  const long long steps = cfg.steps();
  sink(0LL, u0);
  if (!cfg.nonlinear) {
    for (long long k = cfg.sample_stride; k <= steps; k += cfg.sample_stride)
      sink(k, airy_propagate(u0, static_cast<double>(k) * cfg.dt));
    return;
  }
  State a = from_field(u0);
  IfRk4 rk(cfg.max_freq, cfg.dt);
  for (long long k = 1; k <= steps; ++k) {
    rk.step(a);
    if (k % cfg.sample_stride == 0) {
      for (const Complex& z : a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
          throw NumericError("evolve: non-finite state at step " + std::to_string(k) + " (reduce dt)");
      sink(k, to_field(a, cfg.max_freq));
    }
  }
}

}  // namespace

Trajectory evolve(const FourierField& u0, const SolverConfig& cfg) {
  Trajectory traj;
  traj.config = cfg;
  run(u0, cfg, [&](long long k, FourierField f) {
    traj.times.push_back(static_cast<double>(k) * cfg.dt);
    traj.fields.push_back(std::move(f));
  });
  return traj;
}

FourierField evolve_final(const FourierField& u0, const SolverConfig& cfg) {
  FourierField last;
  const long long steps = cfg.steps();
  run(u0, cfg, [&](long long k, FourierField f) {
    if (k == steps) last = std::move(f);
  });
  return last;
}

FourierField evolve_backward(const FourierField& u_end, const SolverConfig& cfg) {
  return evolve_final(u_end.reflected(), cfg).reflected();
}

ConservedQuantities conserved_quantities(const FourierField& field) {
  if (!field.is_real()) throw_precondition("conserved_quantities: field must be real");
  const int n = field.max_freq();
  constexpr double two_pi = 2.0 * 3.14159265358979323846;
  ConservedQuantities q;
  q.mean = two_pi * field[0].real();
  double l2 = 0.0, grad = 0.0;
  for (int xi = -n; xi <= n; ++xi) {
    const double m = std::norm(field[xi]);
    l2 += m;
    grad += static_cast<double>(xi) * xi * m;
  }
  // integral of u^3 = 2pi sum_xi conj(a_xi) (u^2)_xi
  const FourierField sq = dealiased_product(field, field);
  double cubic = 0.0;
  for (int xi = -n; xi <= n; ++xi) cubic += (std::conj(field[xi]) * sq[xi]).real();
  q.l2 = two_pi * l2;
  q.hamiltonian = two_pi * (0.5 * grad + cubic / 3.0);
  return q;
}

namespace {

double coefficient_l2_diff(const FourierField& a, const FourierField& b) {
  const int n = std::max(a.max_freq(), b.max_freq());
  double sum = 0.0;
  for (int xi = -n; xi <= n; ++xi) sum += std::norm(a[xi] - b[xi]);
  return std::sqrt(sum);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  const double den = static_cast<double>(m) * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (static_cast<double>(m) * sxy - sx * sy) / den;
}

}  // namespace

ConvergenceReport convergence_study(const FourierField& u0, const std::vector<SolverConfig>& cfgs) {
  if (cfgs.size() < 2) throw_precondition("convergence_study: need at least two configurations");
  const SolverConfig& ref = cfgs.front();
  bool dt_varies = false, n_varies = false;
  for (const SolverConfig& c : cfgs) {
    if (c.t_end != ref.t_end || c.c_cfl != ref.c_cfl || c.nonlinear != ref.nonlinear ||
        c.integrator != ref.integrator)
      throw_precondition("convergence_study: configurations differ in more than dt or max_freq");
    dt_varies |= c.dt != ref.dt;
    n_varies |= c.max_freq != ref.max_freq;
  }
  if (dt_varies && n_varies)
    throw_precondition("convergence_study: configurations differ in both dt and max_freq");

  ConvergenceReport rep;
  rep.kind = n_varies ? ConvergenceReport::Kind::spatial : ConvergenceReport::Kind::temporal;
  std::vector<FourierField> finals;
  for (SolverConfig c : cfgs) {
    c.sample_stride = 1;
    finals.push_back(evolve_final(u0.truncated(c.max_freq), c));
    rep.parameter.push_back(n_varies ? static_cast<double>(c.max_freq) : c.dt);
  }
  const std::size_t m = finals.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const FourierField& other = rep.kind == ConvergenceReport::Kind::spatial ? finals.back() : finals[i + 1];
    rep.errors.push_back(coefficient_l2_diff(finals[i], other));
  }
  for (std::size_t i = 0; i + 1 < rep.errors.size(); ++i)
    rep.ratios.push_back(rep.errors[i + 1] == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                                  : rep.errors[i] / rep.errors[i + 1]);
  std::vector<double> x(rep.parameter.begin(), rep.parameter.begin() + static_cast<long>(rep.errors.size()));
  rep.fitted_order = fit_slope(x, rep.errors);
  return rep;
}

}  // namespace kdvlab
