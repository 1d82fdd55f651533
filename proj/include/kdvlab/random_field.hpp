#pragma once

#include <cstdint>
#include <random>

#include "kdvlab/fourier_field.hpp"
#include "kdvlab/params.hpp"

namespace kdvlab {

/// Real, mean-zero data with exact power-law magnitudes
/// |a_xi| = <xi>^{s - 1/2 - eps_tail} for 1 <= |xi| <= N and uniform random
/// phases.
///
/// Phases are drawn from one master stream in the order xi = 1, 2, 3, ...,
/// so fields with the same seed are nested: the modes of a size-N field are
/// the first N modes of every larger one. Bit-identical for equal inputs.
FourierField random_rough_field(int max_freq, const RegularityParams& params, std::uint64_t seed);

/// Phase stream shared with random_rough_field. Built on std::mt19937_64,
/// whose output sequence is fixed by the standard; the conversion to [0, 2pi)
/// is done here rather than through a library distribution so the phases are
/// identical across standard libraries.
class PhaseStream {
 public:
  explicit PhaseStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
};

}  // namespace kdvlab
