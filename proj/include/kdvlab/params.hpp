#pragma once

#include <optional>
#include <string>

namespace kdvlab {

/// Regularity exponents (s, delta, gamma) and the tail margin used to build
/// random data in H^{-s}.
///
/// Admissible set: 0 <= s < 1/2, 0 < 10 delta < 1 - 2s,
/// 0 < gamma <= 1 - 10 delta, eps_tail > 0.
struct RegularityParams {
  double s = 0.25;
  double delta = 0.02;
  double gamma = 0.8;
  double eps_tail = 0.1;

  /// gamma defaults to its largest admissible value 1 - 10 delta.
  static RegularityParams make(double s, double delta, std::optional<double> gamma = std::nullopt,
                               double eps_tail = 0.1);

  /// Empty when admissible, otherwise a message naming the violated constraint.
  std::optional<std::string> violation() const;

  /// Throws ConfigError with the violation message.
  void validate() const;
};

}  // namespace kdvlab
