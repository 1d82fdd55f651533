#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kdvlab/params.hpp"

namespace kdvlab {

/// Frequency multipliers whose suprema over the integer lattice control the
/// multilinear estimates. Modulation (L_max) factors are set to 1.
///
/// Three-frequency kinds live on x = x1 + x2 + x3 with x_j != 0, x != 0 and
/// (x1 + x2)(x2 + x3)(x3 + x1) != 0; M_eps lives on pairs (x1, x2) with
/// x1 x2 (x1 + x2) != 0 and |x1| >= |x2|.
enum class MultiplierKind { M_eps, M_mbound, M1, M2, M3, M3_star, LB1, LB2 };

struct MultiplierSpec {
  MultiplierKind kind = MultiplierKind::M_mbound;
  double s = 0.25;
  double delta = 0.02;
  double gamma = 0.8;
  double eps = 0.1;  // M_eps only

  static MultiplierSpec make(MultiplierKind kind, double s, double delta, double gamma, double eps = 0.1) {
    return {kind, s, delta, gamma, eps};
  }
  static MultiplierSpec make(MultiplierKind kind, const RegularityParams& p, double eps = 0.1) {
    return {kind, p.s, p.delta, p.gamma, eps};
  }

  std::string name() const;
  /// 2 for M_eps, 3 otherwise.
  int arity() const;
  /// True when the formula is invariant under x1 <-> x2.
  bool swap_symmetric() const;
  /// Human-readable constraint set.
  std::string constraints() const;
};

const std::array<MultiplierKind, 8>& all_multiplier_kinds();
const char* to_string(MultiplierKind kind);
std::optional<MultiplierKind> parse_multiplier_kind(const std::string& name);

enum class Rejection { none, wrong_arity, zero_frequency, zero_output, resonant, out_of_regime };
const char* to_string(Rejection r);

struct Evaluation {
  double value = 0.0;
  Rejection rejection = Rejection::none;
  bool ok() const noexcept { return rejection == Rejection::none; }
};

/// Exact formula value, or the reason the tuple is outside the constraint set.
/// For M_eps pass (x1, x2); for the others (x1, x2, x3).
Evaluation evaluate(const MultiplierSpec& spec, std::span<const long long> freqs);

struct ScanResult {
  std::string spec;
  int box_size = 0;
  double sup = 0.0;
  /// Canonical representative (x1 > 0; for swap-symmetric kinds also
  /// x1 <= |x2|); the third entry is 0 for M_eps.
  std::array<long long, 3> argmax{};
  unsigned long long evaluations = 0;
  double wall_ms = 0.0;
};

/// Absolute tolerance under which two values count as tied.
inline constexpr double kTieTolerance = 1e-12;

/// Exhaustive supremum over |x_j| <= N. Tuples are visited once per orbit of
/// the reflection x -> -x (and of x1 <-> x2 when the kind is symmetric). The
/// argmax is the lexicographically smallest canonical tuple whose value is
/// within kTieTolerance of the supremum, independent of `threads`.
ScanResult scan(const MultiplierSpec& spec, int N, int threads = 1);

/// Unpruned reference scan through `evaluate`, for small N.
ScanResult scan_naive(const MultiplierSpec& spec, int N);

struct GrowthTrend {
  std::vector<ScanResult> scans;
  /// sup(N_{i+1}) / sup(N_i) - 1.
  std::vector<double> growth_per_doubling;
  /// Least-squares slope of log sup against log N.
  double exponent = 0.0;
};

/// Ns must be ascending powers of two times a common base (each twice the
/// previous), at least three of them.
GrowthTrend growth_trend(const MultiplierSpec& spec, const std::vector<int>& Ns, int threads = 1);

}  // namespace kdvlab
