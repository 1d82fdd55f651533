#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <new>
#include <tuple>

namespace kdvlab::detail {

template <class T>
AlignedBuffer<T>::AlignedBuffer(std::size_t n) : n_(n) {
  p_ = static_cast<T*>(fftw_malloc(sizeof(T) * (n == 0 ? 1 : n)));
  if (p_ == nullptr) throw std::bad_alloc();
  for (std::size_t i = 0; i < n; ++i) p_[i] = T{};
}

template <class T>
AlignedBuffer<T>::~AlignedBuffer() {
  if (p_ != nullptr) fftw_free(p_);
}

template class AlignedBuffer<double>;
template class AlignedBuffer<Complex>;

std::size_t good_fft_size(std::size_t n) {
  if (n <= 1) return 1;
  std::size_t best = 1;
  while (best < n) best *= 2;
  for (std::size_t p5 = 1; p5 < best; p5 *= 5)
    for (std::size_t p35 = p5; p35 < best; p35 *= 3)
      for (std::size_t m = p35; m < best; m *= 2)
        if (m >= n) best = m;
  return best;
}

namespace {

enum class Kind { forward, backward, r2c, c2r };

struct PlanCache {
  std::mutex mu;
  std::map<std::tuple<std::size_t, Kind>, fftw_plan> plans;

  // Plans are made on aligned scratch arrays with FFTW_ESTIMATE so that the
  // chosen algorithm, and therefore every rounding, is fixed per size.
  fftw_plan get(std::size_t n, Kind kind) {
    std::lock_guard lock(mu);
    auto key = std::make_tuple(n, kind);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    const int ni = static_cast<int>(n);
    AlignedBuffer<Complex> a(n), b(n);
    AlignedBuffer<double> r(n);
    fftw_plan p = nullptr;
    auto* ca = reinterpret_cast<fftw_complex*>(a.data());
    auto* cb = reinterpret_cast<fftw_complex*>(b.data());
    switch (kind) {
      case Kind::forward: p = fftw_plan_dft_1d(ni, ca, cb, FFTW_FORWARD, FFTW_ESTIMATE); break;
      case Kind::backward: p = fftw_plan_dft_1d(ni, ca, cb, FFTW_BACKWARD, FFTW_ESTIMATE); break;
      case Kind::r2c: p = fftw_plan_dft_r2c_1d(ni, r.data(), ca, FFTW_ESTIMATE); break;
      case Kind::c2r: p = fftw_plan_dft_c2r_1d(ni, ca, r.data(), FFTW_ESTIMATE); break;
    }
    plans.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& kv : plans) fftw_destroy_plan(kv.second);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

// The new-array execute functions require the same alignment as the planning
// arrays; callers pass AlignedBuffer storage.
void dft(std::size_t n, int sign, const Complex* in, Complex* out) {
  fftw_plan p = cache().get(n, sign < 0 ? Kind::forward : Kind::backward);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void dft_r2c(std::size_t n, const double* in, Complex* out) {
  fftw_plan p = cache().get(n, Kind::r2c);
  fftw_execute_dft_r2c(p, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void dft_c2r(std::size_t n, Complex* in, double* out) {
  fftw_plan p = cache().get(n, Kind::c2r);
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace kdvlab::detail
