#include "kdvlab/fourier_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kdvlab/error.hpp"

namespace kdvlab {

FourierField::FourierField(int max_freq, bool real, bool mean_zero)
    : n_(max_freq), real_(real), mean_zero_(mean_zero) {
  if (max_freq < 0) throw_precondition("FourierField: negative max_freq");
  c_.assign(static_cast<std::size_t>(2 * max_freq + 1), Complex{});
}

FourierField::FourierField(int max_freq, std::vector<Complex> coeffs, bool real, bool mean_zero)
    : n_(max_freq), c_(std::move(coeffs)), real_(real), mean_zero_(mean_zero) {
  if (max_freq < 0) throw_precondition("FourierField: negative max_freq");
  if (c_.size() != static_cast<std::size_t>(2 * max_freq + 1))
    throw_precondition("FourierField: expected " + std::to_string(2 * max_freq + 1) +
                       " coefficients, got " + std::to_string(c_.size()));
  if (!honours_flags())
    throw_precondition("FourierField: coefficients violate the real/mean-zero flags");
}

void FourierField::set(int xi, Complex value) {
  if (xi < -n_ || xi > n_) throw_precondition("FourierField::set: frequency out of range");
  if (xi == 0) {
    if (mean_zero_ && value != Complex{}) throw_precondition("FourierField::set: mean-zero field");
    if (real_ && value.imag() != 0.0) throw_precondition("FourierField::set: real field needs real a_0");
    c_[idx(0)] = value;
    return;
  }
  c_[idx(xi)] = value;
  if (real_) c_[idx(-xi)] = std::conj(value);
}

FourierField& FourierField::relax(bool keep_real, bool keep_mean_zero) {
  real_ = real_ && keep_real;
  mean_zero_ = mean_zero_ && keep_mean_zero;
  return *this;
}

FourierField FourierField::truncated(int max_freq) const {
  FourierField out(max_freq, real_, mean_zero_);
  const int m = std::min(max_freq, n_);
  for (int xi = -m; xi <= m; ++xi) out.c_[out.idx(xi)] = c_[idx(xi)];
  return out;
}

FourierField FourierField::reflected() const {
  FourierField out = *this;
  std::reverse(out.c_.begin(), out.c_.end());
  return out;
}

FourierField FourierField::scaled(double factor) const {
  FourierField out = *this;
  for (auto& c : out.c_) c *= factor;
  return out;
}

FourierField& FourierField::operator+=(const FourierField& other) {
  if (other.n_ != n_) throw_precondition("FourierField: max_freq mismatch in +=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  real_ = real_ && other.real_;
  mean_zero_ = mean_zero_ && other.mean_zero_;
  return *this;
}

FourierField& FourierField::operator-=(const FourierField& other) {
  if (other.n_ != n_) throw_precondition("FourierField: max_freq mismatch in -=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
  real_ = real_ && other.real_;
  mean_zero_ = mean_zero_ && other.mean_zero_;
  return *this;
}

bool FourierField::honours_flags() const noexcept {
  if (mean_zero_ && c_[idx(0)] != Complex{}) return false;
  if (real_) {
    if (c_[idx(0)].imag() != 0.0) return false;
    for (int xi = 1; xi <= n_; ++xi)
      if (c_[idx(-xi)] != std::conj(c_[idx(xi)])) return false;
  }
  return true;
}

FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }

double max_abs_diff(const FourierField& a, const FourierField& b) {
  const int n = std::max(a.max_freq(), b.max_freq());
  double m = 0.0;
  for (int xi = -n; xi <= n; ++xi) m = std::max(m, std::abs(a[xi] - b[xi]));
  return m;
}

}  // namespace kdvlab
