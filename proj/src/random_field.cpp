#include "kdvlab/random_field.hpp"

#include <cmath>
#include <numbers>

#include "kdvlab/error.hpp"

namespace kdvlab {

double PhaseStream::next() {
  // 53 random bits -> [0, 1)
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 2.0 * std::numbers::pi * unit;
}

FourierField random_rough_field(int max_freq, const RegularityParams& params, std::uint64_t seed) {
  if (max_freq < 2) throw_precondition("random_rough_field: need max_freq >= 2");
  const double exponent = params.s - 0.5 - params.eps_tail;
  PhaseStream phases(seed);
  FourierField f(max_freq, true, true);
  for (int xi = 1; xi <= max_freq; ++xi) {
    const double mag = std::pow(bracket(xi), exponent);
    const double th = phases.next();
    f.set(xi, Complex(mag * std::cos(th), mag * std::sin(th)));
  }
  return f;
}

}  // namespace kdvlab
