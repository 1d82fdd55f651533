#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kdvlab/fourier_field.hpp"
#include "kdvlab/solver.hpp"

namespace kdvlab {

// Operators of the normal-form reduction for v = <D>^{-s} u, which solves
// v_t + v_xxx = d_x <D>^{-s} [<D>^s v <D>^s v]. Every operator works on
// complex fields; outputs are flagged real when all inputs are real.

enum class RateScale {
  v_scale,  // rate 2 <xi>^{2s} |f_xi|^2 / xi, for f = <D>^{-s} u0
  u_scale,  // rate 2 |u0_xi|^2 / xi
};

/// Per-mode frequencies of the resonant flow, stored for xi = -N..N with
/// rate(0) = 0 (the zero mode carries no rate).
struct PhaseRates {
  int max_freq = 0;
  RateScale scale = RateScale::v_scale;
  std::vector<double> rates;

  double operator[](long long xi) const {
    return (xi < -max_freq || xi > max_freq) ? 0.0 : rates[static_cast<std::size_t>(xi + max_freq)];
  }
};

PhaseRates resonant_rate(const FourierField& f, double s, RateScale scale);

/// Resonant solution a_xi e^{i rate(xi) t} e^{i xi^3 t}. With u_scale this is
/// the resonant solution written directly in the u variable.
FourierField r_evolve(const FourierField& f, double s, double t, RateScale scale = RateScale::v_scale);

/// <D>^s R[<D>^{-s} u0](t), evaluated in the u variable.
FourierField r_star(const FourierField& u0, double t);

/// Multiplies a_xi(u_t) by e^{-2i |u0_xi|^2 t / xi}; the zero mode is untouched.
FourierField phase_shift(const FourierField& u_t, const FourierField& u0, double t);

enum class EvalMethod { automatic, direct, transform };

/// Bilinear normal form with symbol
///   -(1/3) <x1>^s <x2>^s / (<x1 + x2>^s x1 x2)  on  x1 x2 (x1 + x2) != 0.
/// The output band defaults to 2N (the full support of the product).
/// `automatic` uses the direct double sum for N <= 64.
FourierField t_bilinear(const FourierField& u, const FourierField& v, double s,
                        std::optional<int> out_max_freq = std::nullopt,
                        EvalMethod method = EvalMethod::automatic);

/// Trilinear normal form with the real, even symbol
///   -(2/3) <x1>^s <x2>^s <x3>^s / (x3 <x>^s (x1+x2)(x2+x3)(x3+x1))
/// on (x1+x2)(x2+x3)(x3+x1) != 0, x_j != 0, x = x1 + x2 + x3.
/// The output band defaults to 3N.
FourierField j_trilinear(const FourierField& u, const FourierField& v, const FourierField& w, double s,
                         std::optional<int> out_max_freq = std::nullopt,
                         EvalMethod method = EvalMethod::automatic);

/// Non-resonant trilinear term with symbol <x1>^s <x2>^s <x3>^s / (i x3 <x>^s)
/// on the same constraint set as j_trilinear. Output band defaults to 3N.
FourierField nr_coefficients(const FourierField& u, const FourierField& v, const FourierField& w, double s,
                             std::optional<int> out_max_freq = std::nullopt,
                             EvalMethod method = EvalMethod::automatic);

/// Resonant term -(<xi>^{2s} / (i xi)) |v_xi|^2 v_xi, mode by mode.
FourierField resonant_coefficients(const FourierField& v, double s);

/// |a+b+c|^2 (b+c) + a |b+c|^2 + a^2 conj(b+c) + |a|^2 (b+c).
Complex resonant_polynomial_B(Complex alpha, Complex beta, Complex gamma);

enum class QuinticVariant { Q1, Q2 };

/// Q1 = J(F^{-1} R(Rf, Rf, Rf), Rf, Rf) and Q2 = J(Rf, Rf, F^{-1} R(Rf, Rf, Rf)),
/// with Rf = r_evolve(f, s, t). Output band defaults to 3N.
FourierField quintic_coefficients(const FourierField& f, double s, double t, QuinticVariant variant,
                                  std::optional<int> out_max_freq = std::nullopt,
                                  EvalMethod method = EvalMethod::automatic);

struct CubicIdentity {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

/// lhs = (t1 + t2 + t3) - (x1 + x2 + x3)^3,
/// rhs = sum (t_j - x_j^3) - 3 (x1 + x2)(x2 + x3)(x3 + x1),
/// in exact integer arithmetic. Throws NumericError on overflow.
CubicIdentity cubic_identity(std::int64_t xi1, std::int64_t xi2, std::int64_t xi3, std::int64_t tau1,
                             std::int64_t tau2, std::int64_t tau3);

/// v = r + h + k + w on the sample times of v_traj, with
/// h = T(v, v), k = J(Rf, Rf, Rf), r = Rf, all truncated to the solver band.
struct Decomposition {
  Trajectory r_part, h_part, k_part, w_part;
};

/// v_traj must be the <D>^{-s}-scaled solution with v(0) = f.
Decomposition decompose(const Trajectory& v_traj, const FourierField& f, double s);

// Symbols, for per-frequency checks.
double t_symbol(long long xi1, long long xi2, double s);
/// Symbol of the scaled nonlinearity d_x <D>^{-s}[<D>^s . <D>^s .]: i xi <x1>^s <x2>^s / <xi>^s.
Complex nonlinearity_symbol(long long xi1, long long xi2, double s);
double j_symbol(long long xi1, long long xi2, long long xi3, double s);
Complex nr_symbol(long long xi1, long long xi2, long long xi3, double s);

}  // namespace kdvlab
