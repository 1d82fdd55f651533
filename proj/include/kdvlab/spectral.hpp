#pragma once

#include <cstdint>
#include <optional>

#include "kdvlab/fourier_field.hpp"

namespace kdvlab {

/// Fourier multipliers acting mode by mode. Every symbol is either even and
/// real or odd and imaginary, so real fields stay real.
struct MultiplierSymbol {
  enum class Kind { bessel, derivative, inverse_derivative, bessel_inverse_derivative, mean_kill };

  Kind kind = Kind::mean_kill;
  double sigma = 0.0;  // used by the bessel kinds

  static MultiplierSymbol bessel(double sigma) { return {Kind::bessel, sigma}; }
  static MultiplierSymbol derivative() { return {Kind::derivative, 0.0}; }
  static MultiplierSymbol inverse_derivative() { return {Kind::inverse_derivative, 0.0}; }
  /// <D>^sigma d_x^{-1}
  static MultiplierSymbol bessel_inverse_derivative(double sigma) {
    return {Kind::bessel_inverse_derivative, sigma};
  }
  static MultiplierSymbol mean_kill() { return {Kind::mean_kill, 0.0}; }
};

/// Multiplies a_xi by the symbol. The inverse derivative kinds require a
/// mean-zero field and return one.
FourierField apply_multiplier(const FourierField& field, const MultiplierSymbol& sym);

/// (sum <xi>^{2 sigma} |a_xi|^2)^{1/2}. Note this is the coefficient norm;
/// the physical L^2(T) norm is sqrt(2 pi) times sobolev_norm(f, 0).
double sobolev_norm(const FourierField& field, double sigma);

/// Exact truncated convolution c_xi = sum_eta a_eta b_{xi-eta}, |xi| <= out_max_freq.
///
/// Computed on a zero-padded grid of length >= N_u + N_v + out_max_freq + 1
/// (3N + 1 for the default output band), which removes every aliased
/// contribution from the retained modes. When both inputs are real the
/// real-to-complex path is used and the output is exactly conjugate
/// symmetric. Inputs must share max_freq.
FourierField dealiased_product(const FourierField& u, const FourierField& v,
                               std::optional<int> out_max_freq = std::nullopt);

/// Same convolution by the O(N^2) double loop; reference for tests.
FourierField direct_convolution(const FourierField& u, const FourierField& v,
                                std::optional<int> out_max_freq = std::nullopt);

/// Maximum of |u(x)| over the uniform grid used for products.
double grid_max_abs(const FourierField& u);

/// e^{i xi^3 t}, with the phase reduced modulo 2pi in extended precision.
/// airy_symbol(-xi, t) is the exact conjugate of airy_symbol(xi, t).
Complex airy_symbol(long long xi, double t);

/// e^{i theta} for a phase that is odd in xi; callers compute theta for the
/// positive frequency and conjugate for the mirror.
Complex unit_phase(double theta);

}  // namespace kdvlab
