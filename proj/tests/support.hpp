#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// are written straight from the symbol formulas, without the library's
// factorizations.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "kdvlab/fourier_field.hpp"

namespace kdvlab::testing {

inline double br(long long xi) { return 1.0 + static_cast<double>(std::llabs(xi)); }

/// Gaussian coefficients on 1 <= |xi| <= N (and xi = 0 unless mean_zero),
/// conjugate-symmetric when real.
inline FourierField gaussian_field(int n, std::uint64_t seed, bool real = true, bool mean_zero = true,
                                   double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  FourierField f(n, real, mean_zero);
  for (int xi = real ? 0 : -n; xi <= n; ++xi) {
    if (xi == 0) {
      if (!mean_zero) f.set(0, real ? Complex(g(rng), 0.0) : Complex(g(rng), g(rng)));
      continue;
    }
    f.set(xi, Complex(g(rng), g(rng)));
  }
  return f;
}

/// Coefficients decaying like <xi>^{-decay}, a stand-in for smooth data.
inline FourierField smooth_field(int n, std::uint64_t seed, double decay, double amplitude) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  FourierField f(n, true, true);
  for (int xi = 1; xi <= n; ++xi) f.set(xi, std::polar(amplitude * std::pow(br(xi), -decay), phase(rng)));
  return f;
}

inline FourierField single_mode(int n, int xi, Complex value, bool real) {
  FourierField f(n, real, true);
  f.set(xi, value);
  return f;
}

inline double rel_diff(const FourierField& a, const FourierField& b) {
  double scale = 0.0;
  for (long long xi = -std::max(a.max_freq(), b.max_freq()); xi <= std::max(a.max_freq(), b.max_freq()); ++xi)
    scale = std::max({scale, std::abs(a[xi]), std::abs(b[xi])});
  double d = 0.0;
  for (long long xi = -std::max(a.max_freq(), b.max_freq()); xi <= std::max(a.max_freq(), b.max_freq()); ++xi)
    d = std::max(d, std::abs(a[xi] - b[xi]));
  return scale > 0.0 ? d / scale : d;
}

/// Coefficient vector on -K..K, used for oracle outputs.
struct Coeffs {
  int k;
  std::vector<Complex> c;
  explicit Coeffs(int k_) : k(k_), c(static_cast<std::size_t>(2 * k_ + 1)) {}
  Complex& at(long long xi) { return c[static_cast<std::size_t>(xi + k)]; }
  Complex operator[](long long xi) const {
    return (xi < -k || xi > k) ? Complex{} : c[static_cast<std::size_t>(xi + k)];
  }
};

inline double rel_diff(const FourierField& a, const Coeffs& b) {
  const long long k = std::max<long long>(a.max_freq(), b.k);
  double scale = 0.0, d = 0.0;
  for (long long xi = -k; xi <= k; ++xi) {
    scale = std::max({scale, std::abs(a[xi]), std::abs(b[xi])});
    d = std::max(d, std::abs(a[xi] - b[xi]));
  }
  return scale > 0.0 ? d / scale : d;
}

/// -(1/3) <x1>^s <x2>^s / (<x>^s x1 x2) over x1 x2 x != 0.
inline Coeffs oracle_t(const FourierField& u, const FourierField& v, double s) {
  const int n = u.max_freq();
  Coeffs out(2 * n);
  for (long long a = -n; a <= n; ++a)
    for (long long b = -n; b <= n; ++b) {
      const long long x = a + b;
      if (a == 0 || b == 0 || x == 0) continue;
      const double sym = -(1.0 / 3.0) * std::pow(br(a), s) * std::pow(br(b), s) /
                         (std::pow(br(x), s) * static_cast<double>(a) * static_cast<double>(b));
      out.at(x) += sym * u[a] * v[b];
    }
  return out;
}

/// Constraint shared by J and NR: x_j != 0 and (x1+x2)(x2+x3)(x3+x1) != 0.
inline bool nonresonant(long long a, long long b, long long c) {
  return a != 0 && b != 0 && c != 0 && a + b != 0 && b + c != 0 && c + a != 0;
}

/// -(2/3) <x1>^s <x2>^s <x3>^s / (x3 <x>^s (x1+x2)(x2+x3)(x3+x1)).
inline Coeffs oracle_j(const FourierField& u, const FourierField& v, const FourierField& w, double s) {
  const int n = u.max_freq();
  Coeffs out(3 * n);
  for (long long a = -n; a <= n; ++a)
    for (long long b = -n; b <= n; ++b)
      for (long long c = -n; c <= n; ++c) {
        if (!nonresonant(a, b, c)) continue;
        const long long x = a + b + c;
        const double p = static_cast<double>(a + b) * static_cast<double>(b + c) * static_cast<double>(c + a);
        const double sym = -(2.0 / 3.0) * std::pow(br(a), s) * std::pow(br(b), s) * std::pow(br(c), s) /
                           (static_cast<double>(c) * std::pow(br(x), s) * p);
        out.at(x) += sym * u[a] * v[b] * w[c];
      }
  return out;
}

/// <x1>^s <x2>^s <x3>^s / (i x3 <x>^s) over the nonresonant set, or over
/// x1 + x2 != 0, x_j != 0 when `unrestricted`.
inline Coeffs oracle_nr(const FourierField& u, const FourierField& v, const FourierField& w, double s,
                        bool unrestricted = false) {
  const int n = u.max_freq();
  const Complex i(0.0, 1.0);
  Coeffs out(3 * n);
  for (long long a = -n; a <= n; ++a)
    for (long long b = -n; b <= n; ++b)
      for (long long c = -n; c <= n; ++c) {
        const bool keep = unrestricted ? (a != 0 && b != 0 && c != 0 && a + b != 0) : nonresonant(a, b, c);
        if (!keep) continue;
        const long long x = a + b + c;
        const Complex sym = std::pow(br(a), s) * std::pow(br(b), s) * std::pow(br(c), s) /
                            (i * static_cast<double>(c) * std::pow(br(x), s));
        out.at(x) += sym * u[a] * v[b] * w[c];
      }
  return out;
}

/// -(<x>^{2s} / (i x)) |v_x|^2 v_x.
inline Coeffs oracle_resonant(const FourierField& v, double s) {
  const int n = v.max_freq();
  const Complex i(0.0, 1.0);
  Coeffs out(n);
  for (long long x = -n; x <= n; ++x) {
    if (x == 0) continue;
    out.at(x) = -(std::pow(br(x), 2.0 * s) / (i * static_cast<double>(x))) * std::norm(v[x]) * v[x];
  }
  return out;
}

inline FourierField to_field(const Coeffs& c, bool real, bool mean_zero) {
  return FourierField(c.k, c.c, real, mean_zero);
}

}  // namespace kdvlab::testing
