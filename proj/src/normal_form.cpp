#include "kdvlab/normal_form.hpp"

#include <algorithm>
#include <cmath>

#include "kdvlab/error.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab {

namespace {

std::size_t at(long long xi, int n) { return static_cast<std::size_t>(xi + n); }

// Copies the xi >= 0 half of a real result into its mirror.
void mirror_real(std::vector<Complex>& c, int n) {
  for (int xi = 1; xi <= n; ++xi) c[at(-xi, n)] = std::conj(c[at(xi, n)]);
  c[at(0, n)].imag(0.0);
}

// <xi>^p for |xi| <= max_abs.
class BracketPow {
 public:
  BracketPow(int max_abs, double p) : n_(max_abs), v_(static_cast<std::size_t>(max_abs + 1)) {
    for (int k = 0; k <= max_abs; ++k) v_[static_cast<std::size_t>(k)] = std::pow(bracket(k), p);
  }
  double operator()(long long xi) const { return v_[static_cast<std::size_t>(xi < 0 ? -xi : xi)]; }

 private:
  int n_;
  std::vector<double> v_;
};

FourierField without_mean(const FourierField& f) {
  return apply_multiplier(f, MultiplierSymbol::mean_kill());
}

void require_same_n(const FourierField& a, const FourierField& b, const char* what) {
  if (a.max_freq() != b.max_freq()) throw_precondition(std::string(what) + ": operands have different max_freq");
}

bool use_direct(EvalMethod m, int n) {
  return m == EvalMethod::direct || (m == EvalMethod::automatic && n <= 64);
}

}  // namespace

PhaseRates resonant_rate(const FourierField& f, double s, RateScale scale) {
  if (!f.is_mean_zero()) throw_precondition("resonant_rate: field must be mean-zero");
  PhaseRates r;
  r.max_freq = f.max_freq();
  r.scale = scale;
  r.rates.assign(static_cast<std::size_t>(2 * r.max_freq + 1), 0.0);
  for (int xi = -r.max_freq; xi <= r.max_freq; ++xi) {
    if (xi == 0) continue;
    const double weight = scale == RateScale::v_scale ? std::pow(bracket(xi), 2.0 * s) : 1.0;
    r.rates[at(xi, r.max_freq)] = 2.0 * weight * std::norm(f[xi]) / xi;
  }
  return r;
}

FourierField r_evolve(const FourierField& f, double s, double t, RateScale scale) {
  const PhaseRates rates = resonant_rate(f, s, scale);
  const int n = f.max_freq();
  std::vector<Complex> c(static_cast<std::size_t>(2 * n + 1));
  for (int xi = -n; xi <= n; ++xi) {
    if (xi == 0) continue;
    if (f.is_real() && xi < 0) continue;
    c[at(xi, n)] = (f[xi] * unit_phase(rates[xi] * t)) * airy_symbol(xi, t);
  }
  if (f.is_real()) mirror_real(c, n);
  return FourierField(n, std::move(c), f.is_real(), true);
}

FourierField r_star(const FourierField& u0, double t) { return r_evolve(u0, 0.0, t, RateScale::u_scale); }

FourierField phase_shift(const FourierField& u_t, const FourierField& u0, double t) {
  if (!u0.is_mean_zero()) throw_precondition("phase_shift: u0 must be mean-zero");
  const int n = u_t.max_freq();
  const bool real = u_t.is_real() && u0.is_real();
  std::vector<Complex> c(u_t.coeffs().begin(), u_t.coeffs().end());
  for (int xi = -n; xi <= n; ++xi) {
    if (xi == 0 || (real && xi < 0)) continue;
    c[at(xi, n)] = u_t[xi] * unit_phase(-2.0 * std::norm(u0[xi]) * t / xi);
  }
  if (real) {
    for (int xi = 1; xi <= n; ++xi) c[at(-xi, n)] = std::conj(c[at(xi, n)]);
  }
  FourierField out(n, std::move(c), real, u_t.is_mean_zero());
  return out;
}

// ---------------------------------------------------------------- symbols

double t_symbol(long long xi1, long long xi2, double s) {
  const long long xi = xi1 + xi2;
  if (xi1 == 0 || xi2 == 0 || xi == 0) return 0.0;
  return -(1.0 / 3.0) * std::pow(bracket(xi1), s) * std::pow(bracket(xi2), s) /
         (std::pow(bracket(xi), s) * static_cast<double>(xi1) * static_cast<double>(xi2));
}

Complex nonlinearity_symbol(long long xi1, long long xi2, double s) {
  const long long xi = xi1 + xi2;
  return {0.0, static_cast<double>(xi) * std::pow(bracket(xi1), s) * std::pow(bracket(xi2), s) /
                   std::pow(bracket(xi), s)};
}

double j_symbol(long long xi1, long long xi2, long long xi3, double s) {
  const long long p = (xi1 + xi2) * (xi2 + xi3) * (xi3 + xi1);
  if (xi1 == 0 || xi2 == 0 || xi3 == 0 || p == 0) return 0.0;
  const long long xi = xi1 + xi2 + xi3;
  return -(2.0 / 3.0) * std::pow(bracket(xi1), s) * std::pow(bracket(xi2), s) * std::pow(bracket(xi3), s) /
         (static_cast<double>(xi3) * std::pow(bracket(xi), s) * static_cast<double>(p));
}

Complex nr_symbol(long long xi1, long long xi2, long long xi3, double s) {
  const long long p = (xi1 + xi2) * (xi2 + xi3) * (xi3 + xi1);
  if (xi1 == 0 || xi2 == 0 || xi3 == 0 || p == 0) return {};
  const long long xi = xi1 + xi2 + xi3;
  const double m = std::pow(bracket(xi1), s) * std::pow(bracket(xi2), s) * std::pow(bracket(xi3), s) /
                   (static_cast<double>(xi3) * std::pow(bracket(xi), s));
  return {0.0, -m};  // m / i
}

// ---------------------------------------------------------------- T

namespace {

FourierField t_direct(const FourierField& u, const FourierField& v, double s, int k_out) {
  const int n = u.max_freq();
  const bool real = u.is_real() && v.is_real();
  const BracketPow br(std::max(n, k_out), s);
  std::vector<Complex> c(static_cast<std::size_t>(2 * k_out + 1));
  for (int xi = real ? 0 : -k_out; xi <= k_out; ++xi) {
    if (xi == 0) continue;
    Complex acc{};
    for (int x1 = std::max(-n, xi - n); x1 <= std::min(n, xi + n); ++x1) {
      const int x2 = xi - x1;
      if (x1 == 0 || x2 == 0) continue;
      const double m = br(x1) * br(x2) / (static_cast<double>(x1) * static_cast<double>(x2));
      acc += m * (u[x1] * v[x2]);
    }
    c[at(xi, k_out)] = acc * (-1.0 / (3.0 * br(xi)));
  }
  if (real) mirror_real(c, k_out);
  return FourierField(k_out, std::move(c), real, true);
}

FourierField t_transform(const FourierField& u, const FourierField& v, double s, int k_out) {
  const auto sym = MultiplierSymbol::bessel_inverse_derivative(s);
  const FourierField du = apply_multiplier(without_mean(u), sym);
  const FourierField dv = apply_multiplier(without_mean(v), sym);
  const FourierField prod = dealiased_product(du, dv, k_out);
  const FourierField out = apply_multiplier(apply_multiplier(prod, MultiplierSymbol::bessel(-s)),
                                            MultiplierSymbol::mean_kill());
  return out.scaled(1.0 / 3.0);
}

}  // namespace

FourierField t_bilinear(const FourierField& u, const FourierField& v, double s, std::optional<int> out_max_freq,
                        EvalMethod method) {
  require_same_n(u, v, "t_bilinear");
  const int n = u.max_freq();
  const int k_out = out_max_freq.value_or(2 * n);
  if (k_out < 0) throw_precondition("t_bilinear: negative output band");
  return use_direct(method, n) ? t_direct(u, v, s, k_out) : t_transform(u, v, s, k_out);
}

// ---------------------------------------------------------------- J and NR

namespace {

// Direct constrained triple sum sum_{x1 + x2 + x3 = xi} m(x1, x2, x3) u v w,
// where `weight` returns the complex symbol for admissible triples.
template <class Weight>
FourierField triple_direct(const FourierField& u, const FourierField& v, const FourierField& w, int k_out,
                           bool mean_zero_out, Weight&& weight) {
  const int n = u.max_freq();
  const bool real = u.is_real() && v.is_real() && w.is_real();
  std::vector<Complex> c(static_cast<std::size_t>(2 * k_out + 1));
  for (int xi = real ? 0 : -k_out; xi <= k_out; ++xi) {
    if (mean_zero_out && xi == 0) continue;
    Complex acc{};
    for (int x1 = -n; x1 <= n; ++x1) {
      if (x1 == 0) continue;
      const Complex a = u[x1];
      for (int x2 = std::max(-n, xi - x1 - n); x2 <= std::min(n, xi - x1 + n); ++x2) {
        const int x3 = xi - x1 - x2;
        if (x2 == 0 || x3 == 0) continue;
        const long long p = static_cast<long long>(x1 + x2) * (x2 + x3) * (x3 + x1);
        if (p == 0) continue;
        acc += weight(x1, x2, x3, xi, p) * (a * v[x2] * w[x3]);
      }
    }
    c[at(xi, k_out)] = acc;
  }
  if (real) mirror_real(c, k_out);
  return FourierField(k_out, std::move(c), real, mean_zero_out);
}

FourierField j_transform(const FourierField& u, const FourierField& v, const FourierField& w, double s,
                         int k_out) {
  const int n = u.max_freq();
  const bool real = u.is_real() && v.is_real() && w.is_real();
  const BracketPow br(std::max(n, k_out), s);
  std::vector<Complex> acc(static_cast<std::size_t>(2 * k_out + 1));
  std::vector<Complex> cu(static_cast<std::size_t>(2 * n + 1)), cv(cu.size());
  for (int k = -n; k <= n; ++k) {
    const Complex wk = w[k];
    if (k == 0 || wk == Complex{}) continue;
    // For fixed x3 = k the symbol factors as
    //   -(2/3) <k>^s / (k <xi>^s) * 1/(x1 + x2) * [<x1>^s/(x1 + k)] [<x2>^s/(x2 + k)].
    for (int x = -n; x <= n; ++x) {
      const bool skip = x == 0 || x == -k;
      const double f = skip ? 0.0 : br(x) / static_cast<double>(x + k);
      cu[at(x, n)] = f * u[x];
      cv[at(x, n)] = f * v[x];
    }
    const FourierField fu(n, cu, false, false), fv(n, cv, false, false);
    const FourierField conv = dealiased_product(fu, fv, 2 * n);
    const Complex coef = wk * (-(2.0 / 3.0) * br(k) / static_cast<double>(k));
    for (int xi = std::max(-k_out, k - 2 * n); xi <= std::min(k_out, k + 2 * n); ++xi) {
      const int m = xi - k;
      if (m == 0) continue;
      acc[at(xi, k_out)] += coef * conv[m] / static_cast<double>(m);
    }
  }
  for (int xi = -k_out; xi <= k_out; ++xi) acc[at(xi, k_out)] /= br(xi);
  if (real) mirror_real(acc, k_out);
  return FourierField(k_out, std::move(acc), real, false);
}

// NR by inclusion-exclusion:
//   NR = U - A - B + (A and B), where U drops only x1 + x2 = 0, A is the
//   slice x2 + x3 = 0 and B the slice x3 + x1 = 0.
FourierField nr_transform(const FourierField& u, const FourierField& v, const FourierField& w, double s,
                          int k_out) {
  const int n = u.max_freq();
  const bool real = u.is_real() && v.is_real() && w.is_real();
  const BracketPow br(std::max(n, k_out), s);
  const auto bes = MultiplierSymbol::bessel(s);
  const FourierField su = apply_multiplier(without_mean(u), bes);
  const FourierField sv = apply_multiplier(without_mean(v), bes);
  const FourierField pair = without_mean(dealiased_product(su, sv, 2 * n));
  const FourierField dw =
      apply_multiplier(without_mean(w), MultiplierSymbol::bessel_inverse_derivative(s)).truncated(2 * n);
  const FourierField full = dealiased_product(pair, dw, k_out);

  // sum_{x3 != 0} <x3>^{2s} a(-x3) b(x3) / (i x3)
  auto slice_sum = [&](const FourierField& a, const FourierField& b) {
    Complex acc{};
    for (int x3 = -n; x3 <= n; ++x3) {
      if (x3 == 0) continue;
      acc += (br(x3) * br(x3) / static_cast<double>(x3)) * (a[-x3] * b[x3]);
    }
    return Complex(acc.imag(), -acc.real());  // acc / i
  };
  const Complex s_vw = slice_sum(v, w), s_uw = slice_sum(u, w);

  std::vector<Complex> c(static_cast<std::size_t>(2 * k_out + 1));
  for (int xi = -k_out; xi <= k_out; ++xi) {
    Complex val = full[xi] / br(xi);
    if (xi != 0 && std::abs(xi) <= n) {
      const Complex over_ixi = Complex(0.0, -br(xi) * br(xi) / static_cast<double>(xi));  // <xi>^{2s}/(i xi)
      const Complex a_part = u[xi] * (s_vw - over_ixi * v[-xi] * w[xi]);
      const Complex b_part = v[xi] * (s_uw - over_ixi * u[-xi] * w[xi]);
      const Complex ab_part = -over_ixi * u[xi] * v[xi] * w[-xi];
      val = val - a_part - b_part + ab_part;
    }
    c[at(xi, k_out)] = val;
  }
  if (real) mirror_real(c, k_out);
  return FourierField(k_out, std::move(c), real, false);
}

}  // namespace

FourierField j_trilinear(const FourierField& u, const FourierField& v, const FourierField& w, double s,
                         std::optional<int> out_max_freq, EvalMethod method) {
  require_same_n(u, v, "j_trilinear");
  require_same_n(u, w, "j_trilinear");
  const int n = u.max_freq();
  const int k_out = out_max_freq.value_or(3 * n);
  if (k_out < 0) throw_precondition("j_trilinear: negative output band");
  if (!use_direct(method, n)) return j_transform(u, v, w, s, k_out);
  const BracketPow br(std::max(n, k_out), s);
  return triple_direct(u, v, w, k_out, false, [&](int x1, int x2, int x3, int xi, long long p) {
    return Complex(-(2.0 / 3.0) * br(x1) * br(x2) * br(x3) /
                       (static_cast<double>(x3) * br(xi) * static_cast<double>(p)),
                   0.0);
  });
}

FourierField nr_coefficients(const FourierField& u, const FourierField& v, const FourierField& w, double s,
                             std::optional<int> out_max_freq, EvalMethod method) {
  require_same_n(u, v, "nr_coefficients");
  require_same_n(u, w, "nr_coefficients");
  if (!u.is_mean_zero() || !v.is_mean_zero() || !w.is_mean_zero())
    throw_precondition("nr_coefficients: inputs must be mean-zero");
  const int n = u.max_freq();
  const int k_out = out_max_freq.value_or(3 * n);
  if (k_out < 0) throw_precondition("nr_coefficients: negative output band");
  if (!use_direct(method, n)) return nr_transform(u, v, w, s, k_out);
  const BracketPow br(std::max(n, k_out), s);
  return triple_direct(u, v, w, k_out, false, [&](int x1, int x2, int x3, int xi, long long) {
    return Complex(0.0, -br(x1) * br(x2) * br(x3) / (static_cast<double>(x3) * br(xi)));
  });
}

FourierField resonant_coefficients(const FourierField& v, double s) {
  if (!v.is_mean_zero()) throw_precondition("resonant_coefficients: field must be mean-zero");
  const int n = v.max_freq();
  std::vector<Complex> c(static_cast<std::size_t>(2 * n + 1));
  for (int xi = -n; xi <= n; ++xi) {
    if (xi == 0 || (v.is_real() && xi < 0)) continue;
    // -(<xi>^{2s} / (i xi)) |a|^2 a = i (<xi>^{2s} / xi) |a|^2 a
    const double m = std::pow(bracket(xi), 2.0 * s) * std::norm(v[xi]) / xi;
    const Complex a = v[xi];
    c[at(xi, n)] = Complex(-m * a.imag(), m * a.real());
  }
  if (v.is_real()) mirror_real(c, n);
  return FourierField(n, std::move(c), v.is_real(), true);
}

Complex resonant_polynomial_B(Complex alpha, Complex beta, Complex gamma) {
  const Complex bg = beta + gamma;
  const Complex abg = alpha + bg;
  return std::norm(abg) * bg + alpha * std::norm(bg) + alpha * alpha * std::conj(bg) + std::norm(alpha) * bg;
}

FourierField quintic_coefficients(const FourierField& f, double s, double t, QuinticVariant variant,
                                  std::optional<int> out_max_freq, EvalMethod method) {
  if (!f.is_mean_zero()) throw_precondition("quintic_coefficients: field must be mean-zero");
  const FourierField rf = r_evolve(f, s, t);
  const FourierField res = resonant_coefficients(rf, s);
  return variant == QuinticVariant::Q1 ? j_trilinear(res, rf, rf, s, out_max_freq, method)
                                       : j_trilinear(rf, rf, res, s, out_max_freq, method);
}

// ---------------------------------------------------------------- identity

namespace {

__extension__ using Wide = __int128;

Wide mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw NumericError("cubic_identity: integer overflow");
  return r;
}
Wide add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw NumericError("cubic_identity: integer overflow");
  return r;
}
Wide sub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) throw NumericError("cubic_identity: integer overflow");
  return r;
}
Wide cube(Wide a) { return mul(mul(a, a), a); }

std::int64_t narrow(Wide a) {
  if (a > INT64_MAX || a < INT64_MIN) throw NumericError("cubic_identity: result exceeds 64 bits");
  return static_cast<std::int64_t>(a);
}

}  // namespace

CubicIdentity cubic_identity(std::int64_t xi1, std::int64_t xi2, std::int64_t xi3, std::int64_t tau1,
                             std::int64_t tau2, std::int64_t tau3) {
  const Wide x1 = xi1, x2 = xi2, x3 = xi3;
  const Wide lhs = sub(add(add(tau1, tau2), tau3), cube(add(add(x1, x2), x3)));
  Wide rhs = add(add(sub(tau1, cube(x1)), sub(tau2, cube(x2))), sub(tau3, cube(x3)));
  rhs = sub(rhs, mul(3, mul(mul(add(x1, x2), add(x2, x3)), add(x3, x1))));
  return {narrow(lhs), narrow(rhs)};
}

// ---------------------------------------------------------------- decompose

Decomposition decompose(const Trajectory& v_traj, const FourierField& f, double s) {
  if (v_traj.size() == 0) throw_precondition("decompose: empty trajectory");
  const FourierField& v0 = v_traj.fields.front();
  if (v0.max_freq() != f.max_freq()) throw_precondition("decompose: v(0) and f differ in max_freq");
  double scale = 1.0;
  for (const Complex& z : f.coeffs()) scale = std::max(scale, std::abs(z));
  if (max_abs_diff(v0, f) > 1e-12 * scale) throw_precondition("decompose: v(0) differs from f");

  const int n = f.max_freq();
  Decomposition d;
  for (Trajectory* tr : {&d.r_part, &d.h_part, &d.k_part, &d.w_part}) {
    tr->times = v_traj.times;
    tr->config = v_traj.config;
  }
  for (std::size_t i = 0; i < v_traj.size(); ++i) {
    const double t = v_traj.times[i];
    const FourierField& v = v_traj.fields[i];
    FourierField r = r_evolve(f, s, t);
    FourierField h = t_bilinear(v, v, s, n);
    FourierField k = j_trilinear(r, r, r, s, n);
    FourierField w = v;
    w.relax(true, false);
    w -= r;
    w -= h;
    w -= k;
    d.r_part.fields.push_back(std::move(r));
    d.h_part.fields.push_back(std::move(h));
    d.k_part.fields.push_back(std::move(k));
    d.w_part.fields.push_back(std::move(w));
  }
  return d;
}

}  // namespace kdvlab
