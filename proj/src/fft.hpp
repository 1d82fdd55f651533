#pragma once

// Thin RAII layer over FFTW used by the product and space-time transforms.
// Plans are created once per (size, kind) under a lock; execution uses the
// new-array interface so it is safe from several threads at once.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace kdvlab::detail {

using Complex = std::complex<double>;

/// Aligned scratch buffer owned through fftw_malloc/fftw_free.
template <class T>
class AlignedBuffer {
 public:
  explicit AlignedBuffer(std::size_t n);
  ~AlignedBuffer();
  AlignedBuffer(const AlignedBuffer&) = delete;
  AlignedBuffer& operator=(const AlignedBuffer&) = delete;
  AlignedBuffer(AlignedBuffer&& o) noexcept : p_(o.p_), n_(o.n_) { o.p_ = nullptr; o.n_ = 0; }

  T* data() noexcept { return p_; }
  const T* data() const noexcept { return p_; }
  std::size_t size() const noexcept { return n_; }
  T& operator[](std::size_t i) noexcept { return p_[i]; }
  const T& operator[](std::size_t i) const noexcept { return p_[i]; }
  std::span<T> span() noexcept { return {p_, n_}; }

 private:
  T* p_ = nullptr;
  std::size_t n_ = 0;
};

/// Smallest 2^a 3^b 5^c that is >= n.
std::size_t good_fft_size(std::size_t n);

/// out[k] = sum_j in[j] e^{-2 pi i jk/n} (unnormalised). `sign` = +1 gives
/// the backward transform with e^{+2 pi i jk/n}.
void dft(std::size_t n, int sign, const Complex* in, Complex* out);

/// Real-to-complex forward transform: out has n/2+1 entries.
void dft_r2c(std::size_t n, const double* in, Complex* out);

/// Complex-to-real backward transform (unnormalised, e^{+}); destroys `in`.
void dft_c2r(std::size_t n, Complex* in, double* out);

}  // namespace kdvlab::detail
