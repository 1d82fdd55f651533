#include "kdvlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "kdvlab/error.hpp"

namespace kdvlab {

namespace {

// Applies fn(xi, a_xi) to every mode. For real fields only xi >= 0 is
// evaluated and the mirror is written as the conjugate, so conjugate
// symmetry survives bit for bit.
template <class Fn>
FourierField map_modes(const FourierField& f, bool mean_zero_out, Fn&& fn) {
  const int n = f.max_freq();
  std::vector<Complex> c(static_cast<std::size_t>(2 * n + 1));
  if (f.is_real()) {
    for (int xi = 0; xi <= n; ++xi) {
      const Complex z = fn(xi, f[xi]);
      c[static_cast<std::size_t>(n + xi)] = z;
      c[static_cast<std::size_t>(n - xi)] = std::conj(z);
    }
    c[static_cast<std::size_t>(n)] = Complex(c[static_cast<std::size_t>(n)].real(), 0.0);
  } else {
    for (int xi = -n; xi <= n; ++xi) c[static_cast<std::size_t>(n + xi)] = fn(xi, f[xi]);
  }
  if (mean_zero_out) c[static_cast<std::size_t>(n)] = Complex{};
  return FourierField(n, std::move(c), f.is_real(), mean_zero_out);
}

}  // namespace

FourierField apply_multiplier(const FourierField& field, const MultiplierSymbol& sym) {
  using K = MultiplierSymbol::Kind;
  switch (sym.kind) {
    case K::bessel:
      return map_modes(field, field.is_mean_zero(), [&](int xi, Complex a) {
        return a * std::pow(bracket(xi), sym.sigma);
      });
    case K::derivative:
      return map_modes(field, true, [](int xi, Complex a) {
        return Complex(-a.imag() * xi, a.real() * xi);
      });
    case K::inverse_derivative:
    case K::bessel_inverse_derivative: {
      if (!field.is_mean_zero())
        throw_precondition("apply_multiplier: inverse derivative needs a mean-zero field");
      const double sigma = sym.kind == K::inverse_derivative ? 0.0 : sym.sigma;
      return map_modes(field, true, [sigma](int xi, Complex a) {
        if (xi == 0) return Complex{};
        // a / (i xi) = -i a / xi
        const double w = std::pow(bracket(xi), sigma) / xi;
        return Complex(a.imag() * w, -a.real() * w);
      });
    }
    case K::mean_kill:
      return map_modes(field, true, [](int, Complex a) { return a; });
  }
  return field;
}

double sobolev_norm(const FourierField& field, double sigma) {
  const int n = field.max_freq();
  double sum = 0.0;
  for (int xi = -n; xi <= n; ++xi) sum += std::pow(bracket(xi), 2.0 * sigma) * std::norm(field[xi]);
  return std::sqrt(sum);
}

FourierField dealiased_product(const FourierField& u, const FourierField& v,
                               std::optional<int> out_max_freq) {
  if (u.max_freq() != v.max_freq())
    throw_precondition("dealiased_product: operands have different max_freq");
  const int n = u.max_freq();
  const int k_out = out_max_freq.value_or(n);
  if (k_out < 0) throw_precondition("dealiased_product: negative output band");
  const std::size_t m = detail::good_fft_size(static_cast<std::size_t>(2 * n + k_out + 1));
  const double inv_m = 1.0 / static_cast<double>(m);

  if (u.is_real() && v.is_real()) {
    const std::size_t half = m / 2 + 1;
    detail::AlignedBuffer<Complex> spec(half);
    detail::AlignedBuffer<double> gu(m), gv(&u == &v ? 0 : m);
    for (int k = 0; k <= n; ++k) spec[static_cast<std::size_t>(k)] = u[k];
    detail::dft_c2r(m, spec.data(), gu.data());
    if (&u == &v) {
      for (std::size_t j = 0; j < m; ++j) gu[j] *= gu[j];
    } else {
      std::fill(spec.data(), spec.data() + half, Complex{});
      for (int k = 0; k <= n; ++k) spec[static_cast<std::size_t>(k)] = v[k];
      detail::dft_c2r(m, spec.data(), gv.data());
      for (std::size_t j = 0; j < m; ++j) gu[j] *= gv[j];
    }
    detail::dft_r2c(m, gu.data(), spec.data());
    std::vector<Complex> c(static_cast<std::size_t>(2 * k_out + 1));
    for (int k = 0; k <= k_out; ++k) {
      const Complex z = spec[static_cast<std::size_t>(k)] * inv_m;
      c[static_cast<std::size_t>(k_out + k)] = z;
      c[static_cast<std::size_t>(k_out - k)] = std::conj(z);
    }
    c[static_cast<std::size_t>(k_out)].imag(0.0);
    for (const Complex& z : c)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NumericError("dealiased_product: non-finite result");
    return FourierField(k_out, std::move(c), true, false);
  }

  detail::AlignedBuffer<Complex> spec(m), gu(m), gv(m);
  auto load = [&](const FourierField& f, detail::AlignedBuffer<Complex>& grid) {
    std::fill(spec.data(), spec.data() + m, Complex{});
    for (int k = -n; k <= n; ++k) spec[static_cast<std::size_t>((k + static_cast<long>(m)) % static_cast<long>(m))] = f[k];
    detail::dft(m, +1, spec.data(), grid.data());
  };
  load(u, gu);
  load(v, gv);
  for (std::size_t j = 0; j < m; ++j) gu[j] *= gv[j];
  detail::dft(m, -1, gu.data(), spec.data());
  std::vector<Complex> c(static_cast<std::size_t>(2 * k_out + 1));
  for (int k = -k_out; k <= k_out; ++k)
    c[static_cast<std::size_t>(k_out + k)] =
        spec[static_cast<std::size_t>((k + static_cast<long>(m)) % static_cast<long>(m))] * inv_m;
  return FourierField(k_out, std::move(c), false, false);
}

FourierField direct_convolution(const FourierField& u, const FourierField& v,
                                std::optional<int> out_max_freq) {
  if (u.max_freq() != v.max_freq())
    throw_precondition("direct_convolution: operands have different max_freq");
  const int n = u.max_freq();
  const int k_out = out_max_freq.value_or(n);
  std::vector<Complex> c(static_cast<std::size_t>(2 * k_out + 1));
  for (int xi = -k_out; xi <= k_out; ++xi) {
    Complex acc{};
    for (int eta = std::max(-n, xi - n); eta <= std::min(n, xi + n); ++eta) acc += u[eta] * v[xi - eta];
    c[static_cast<std::size_t>(k_out + xi)] = acc;
  }
  return FourierField(k_out, std::move(c), false, false);
}

double grid_max_abs(const FourierField& u) {
  const int n = u.max_freq();
  const std::size_t m = detail::good_fft_size(static_cast<std::size_t>(3 * n + 1));
  detail::AlignedBuffer<Complex> spec(m), grid(m);
  for (int k = -n; k <= n; ++k)
    spec[static_cast<std::size_t>((k + static_cast<long>(m)) % static_cast<long>(m))] = u[k];
  detail::dft(m, +1, spec.data(), grid.data());
  double mx = 0.0;
  for (std::size_t j = 0; j < m; ++j) mx = std::max(mx, std::abs(grid[j]));
  return mx;
}

Complex unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

Complex airy_symbol(long long xi, double t) {
  if (xi == 0) return {1.0, 0.0};
  const long long a = xi < 0 ? -xi : xi;
  const long double cube = static_cast<long double>(a) * a * a;
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const double phase = static_cast<double>(std::remainder(cube * static_cast<long double>(t), two_pi));
  const Complex z = unit_phase(phase);
  return xi < 0 ? std::conj(z) : z;
}

}  // namespace kdvlab
