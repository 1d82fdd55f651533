#pragma once

#include <complex>
#include <span>
#include <vector>

namespace kdvlab {

using Complex = std::complex<double>;

/// Japanese bracket with the convention <xi> = 1 + |xi|.
inline double bracket(long long xi) { return 1.0 + static_cast<double>(xi < 0 ? -xi : xi); }

/// Truncated Fourier series f(x) = sum_{|xi| <= N} a_xi e^{i xi x} on the
/// torus [0, 2pi).
///
/// Coefficients are stored for xi = -N..N. Two flags record structural
/// properties that every mutation preserves exactly:
///   - real:      a_{-xi} == conj(a_xi) bit for bit (a_0 is real);
///   - mean_zero: a_0 == 0.
/// Coefficients outside [-N, N] read as zero.
class FourierField {
 public:
  FourierField() = default;

  /// Zero field.
  explicit FourierField(int max_freq, bool real = true, bool mean_zero = true);

  /// Takes coefficients in xi = -N..N order. Throws PreconditionError if the
  /// data does not honour the flags exactly.
  FourierField(int max_freq, std::vector<Complex> coeffs, bool real, bool mean_zero);

  int max_freq() const noexcept { return n_; }
  bool is_real() const noexcept { return real_; }
  bool is_mean_zero() const noexcept { return mean_zero_; }

  Complex operator[](long long xi) const noexcept {
    return (xi < -n_ || xi > n_) ? Complex{} : c_[static_cast<std::size_t>(xi + n_)];
  }

  /// Sets a_xi; for real fields the mirror a_{-xi} is set to the conjugate.
  /// Throws when the write would break a flag (a nonzero mean on a
  /// mean-zero field, a non-real a_0 on a real field) or xi is out of range.
  void set(int xi, Complex value);

  std::span<const Complex> coeffs() const noexcept { return c_; }

  /// Drops the flags that the caller can no longer guarantee. Never adds a flag.
  FourierField& relax(bool keep_real, bool keep_mean_zero);

  /// Same field reinterpreted with a different truncation: extra modes are
  /// zero, modes beyond the new N are discarded.
  FourierField truncated(int max_freq) const;

  /// Reflection x -> -x, i.e. a_xi -> a_{-xi}.
  FourierField reflected() const;

  FourierField scaled(double factor) const;

  FourierField& operator+=(const FourierField& other);
  FourierField& operator-=(const FourierField& other);

  /// True when the stored data honours the flags exactly.
  bool honours_flags() const noexcept;

  friend bool operator==(const FourierField& a, const FourierField& b) = default;

 private:
  int n_ = 0;
  std::vector<Complex> c_{Complex{}};
  bool real_ = true;
  bool mean_zero_ = true;

  std::size_t idx(long long xi) const noexcept { return static_cast<std::size_t>(xi + n_); }
};

FourierField operator+(FourierField a, const FourierField& b);
FourierField operator-(FourierField a, const FourierField& b);

/// Max-norm of the coefficient difference, for tests and diagnostics.
double max_abs_diff(const FourierField& a, const FourierField& b);

}  // namespace kdvlab
