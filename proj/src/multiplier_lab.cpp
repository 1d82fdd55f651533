#include "kdvlab/multiplier_lab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "kdvlab/error.hpp"
#include "kdvlab/parallel.hpp"

namespace kdvlab {

namespace {

constexpr std::array<MultiplierKind, 8> kKinds = {
    MultiplierKind::M_eps, MultiplierKind::M_mbound, MultiplierKind::M1,  MultiplierKind::M2,
    MultiplierKind::M3,    MultiplierKind::M3_star,  MultiplierKind::LB1, MultiplierKind::LB2};

long long iabs(long long x) { return x < 0 ? -x : x; }

// Power tables indexed by a signed integer in [-r, r]. Entries that encode
// an excluded constraint are stored as 0.
class Table {
 public:
  Table() = default;
  template <class Fn>
  Table(long long r, Fn&& fn) : r_(r), v_(static_cast<std::size_t>(2 * r + 1)) {
    for (long long k = -r; k <= r; ++k) v_[static_cast<std::size_t>(k + r)] = fn(k);
  }
  double operator[](long long k) const { return v_[static_cast<std::size_t>(k + r_)]; }
  const double* origin() const { return v_.data() + r_; }

 private:
  long long r_ = 0;
  std::vector<double> v_;
};

Table bracket_table(long long r, double e, bool zero_excluded) {
  return Table(r, [&](long long k) { return (zero_excluded && k == 0) ? 0.0 : std::pow(1.0 + double(iabs(k)), e); });
}

Table abs_table(long long r, double e) {
  return Table(r, [&](long long k) { return k == 0 ? 0.0 : std::pow(double(iabs(k)), e); });
}

// One kernel serves both `evaluate` and `scan`; every product is formed in
// the same order on both paths, so the two agree bit for bit.
class Kernel {
 public:
  Kernel(const MultiplierSpec& spec, long long box) : spec_(spec), kind_(spec.kind) {
    const double s = spec.s, d = spec.delta, g = spec.gamma;
    const long long r1 = box, r2 = 2 * box, r3 = 3 * box;
    switch (kind_) {
      case MultiplierKind::M_eps:
        b1_ = bracket_table(r1, s, false);
        b2_ = b1_;
        b0_ = bracket_table(r2, 1.0 - s, true);
        a1_ = abs_table(r1, -1.0);
        a2_ = abs_table(r1, -(0.5 - spec.eps));
        return;
      case MultiplierKind::M_mbound:
        generic(s + d, s + d, -(1.0 - s - d), -s, (1.0 - 2.0 * d) / 2.0, r1, r2, r3);
        return;
      case MultiplierKind::M1:
        generic(-(g - s - d), s + d, -(1.0 - s - d), g - s, 0.5 - 3.0 * d, r1, r2, r3);
        return;
      case MultiplierKind::M2:
        generic(s + d, s + d, -(1.0 + g - s - 2.0 * d), g - s, 0.5 - 3.0 * d, r1, r2, r3);
        return;
      case MultiplierKind::M3:
        generic(s + d, s + d, -(1.0 - s - d), g - s, 0.5 - 3.0 * d, r1, r2, r3);
        xm_ = abs_table(r3, -(1.0 - 6.0 * d));
        return;
      case MultiplierKind::M3_star:
        b1_ = bracket_table(r1, -(1.0 - s), false);
        b2_ = bracket_table(r1, s + d, false);
        b3_ = bracket_table(r1, -(1.0 - s - d), true);
        b0_ = bracket_table(r3, g - s + d, true);
        xm_ = abs_table(r3, 12.0 * d);
        return;
      case MultiplierKind::LB1:
        generic(3.0 * s - 1.0 + d, s + d, -(1.0 - s - d), g - s, 1.5 - 2.0 * d, r1, r2, r3);
        return;
      case MultiplierKind::LB2:
        generic(s + d, s + d, -(2.0 - 3.0 * s - d), g - s, 1.5 - 2.0 * d, r1, r2, r3);
        return;
    }
  }

  double pair_value(long long x1, long long x2) const {
    return ((b1_[x1] * b2_[x2]) * b0_[x1 + x2]) * (a1_[x1] * a2_[x2]);
  }

  // Fills out[x3 - lo] for x3 in [lo, hi]; excluded tuples give 0.
  // Requires x1, x2 != 0.
  void row(long long x1, long long x2, long long lo, long long hi, double* out) const {
    const long long len = hi - lo + 1;
    switch (kind_) {
      case MultiplierKind::M3: {
        const double b12 = b1_[x1] * b2_[x2];
        const double q12 = q_[x1 + x2];
        for (long long j = 0; j < len; ++j) out[j] = m3(x1, x2, lo + j, b12, q12);
        return;
      }
      case MultiplierKind::M3_star:
        for (long long j = 0; j < len; ++j) out[j] = m3_star(x1, x2, lo + j);
        return;
      default: {
        const double b12 = b1_[x1] * b2_[x2];
        const double q12 = q_[x1 + x2];
        const double* b3 = b3_.origin() + lo;
        const double* b0 = b0_.origin() + (x1 + x2 + lo);
        const double* q23 = q_.origin() + (x2 + lo);
        const double* q31 = q_.origin() + (x1 + lo);
        for (long long j = 0; j < len; ++j) out[j] = (((b12 * b3[j]) * b0[j]) * q12) * (q23[j] * q31[j]);
        return;
      }
    }
  }

  double triple_value(long long x1, long long x2, long long x3) const {
    double v = 0.0;
    row(x1, x2, x3, x3, &v);
    return v;
  }

 private:
  void generic(double e1, double e2, double e3, double e0, double q, long long r1, long long r2, long long r3) {
    b1_ = bracket_table(r1, e1, false);
    b2_ = bracket_table(r1, e2, false);
    b3_ = bracket_table(r1, e3, true);
    b0_ = bracket_table(r3, e0, true);
    q_ = abs_table(r2, -q);
  }

  double m3(long long x1, long long x2, long long x3, double b12, double q12) const {
    const double qa = q12, qb = q_[x2 + x3], qc = q_[x3 + x1];
    if (std::min(qa, std::min(qb, qc)) == 0.0) return 0.0;
    const long long x = x1 + x2 + x3;
    const long long mx = std::max(std::max(iabs(x1), iabs(x2)), std::max(iabs(x3), iabs(x)));
    return (((b12 * b3_[x3]) * b0_[x]) * xm_[mx]) * std::max(qa, std::max(qb, qc));
  }

  double m3_star(long long x1, long long x2, long long x3) const {
    const long long x = x1 + x2 + x3;
    if (x3 == 0 || x == 0 || (x1 + x2) * (x2 + x3) * (x3 + x1) == 0) return 0.0;
    const long long a[4] = {iabs(x1), iabs(x2), iabs(x3), iabs(x)};
    const long long mx = *std::max_element(a, a + 4), mn = *std::min_element(a, a + 4);
    if (mx > 2 * mn) return 0.0;
    return ((((xm_[mx] * b2_[x2]) * b0_[x]) * b1_[x1]) * b3_[x3]);
  }

  MultiplierSpec spec_;
  MultiplierKind kind_;
  Table b1_, b2_, b3_, b0_, q_, xm_, a1_, a2_;
};

bool comparable(long long x1, long long x2, long long x3) {
  const long long a[4] = {iabs(x1), iabs(x2), iabs(x3), iabs(x1 + x2 + x3)};
  return *std::max_element(a, a + 4) <= 2 * *std::min_element(a, a + 4);
}

Rejection classify(const MultiplierSpec& spec, std::span<const long long> f) {
  if (static_cast<int>(f.size()) != spec.arity()) return Rejection::wrong_arity;
  if (spec.kind == MultiplierKind::M_eps) {
    if (f[0] == 0 || f[1] == 0) return Rejection::zero_frequency;
    if (f[0] + f[1] == 0) return Rejection::zero_output;
    if (iabs(f[0]) < iabs(f[1])) return Rejection::out_of_regime;
    return Rejection::none;
  }
  if (f[0] == 0 || f[1] == 0 || f[2] == 0) return Rejection::zero_frequency;
  if (f[0] + f[1] + f[2] == 0) return Rejection::zero_output;
  if ((f[0] + f[1]) * (f[1] + f[2]) * (f[2] + f[0]) == 0) return Rejection::resonant;
  if (spec.kind == MultiplierKind::M3_star && !comparable(f[0], f[1], f[2])) return Rejection::out_of_regime;
  return Rejection::none;
}

using Tuple = std::array<long long, 3>;

Tuple canonical(const MultiplierSpec& spec, Tuple t) {
  std::vector<Tuple> orbit = {t, {-t[0], -t[1], -t[2]}};
  if (spec.swap_symmetric()) {
    orbit.push_back({t[1], t[0], t[2]});
    orbit.push_back({-t[1], -t[0], -t[2]});
  }
  Tuple best{};
  bool have = false;
  for (const Tuple& o : orbit) {
    if (o[0] <= 0) continue;
    if (!have || o < best) best = o, have = true;
  }
  return best;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Visits the canonical rows (x1, x2) of one x1 slice and the x3 window of each.
template <class Fn>
void for_each_row(const MultiplierSpec& spec, long long N, long long x1, Fn&& fn) {
  const bool sym = spec.swap_symmetric();
  const bool star = spec.kind == MultiplierKind::M3_star;
  long long lo2 = -N, hi2 = N, lo3 = -N, hi3 = N;
  if (star) {
    hi2 = std::min(N, 2 * x1);
    lo2 = -hi2;
    hi3 = hi2;
    lo3 = lo2;
  }
  for (long long x2 = lo2; x2 <= hi2; ++x2) {
    if (x2 == 0 || x2 == -x1) continue;
    if (sym && iabs(x2) < x1) continue;
    if (star && 2 * iabs(x2) < x1) continue;
    fn(x2, lo3, hi3);
  }
}

}  // namespace

std::string MultiplierSpec::name() const { return to_string(kind); }

int MultiplierSpec::arity() const { return kind == MultiplierKind::M_eps ? 2 : 3; }

bool MultiplierSpec::swap_symmetric() const {
  switch (kind) {
    case MultiplierKind::M_mbound:
    case MultiplierKind::M2:
    case MultiplierKind::M3:
    case MultiplierKind::LB2: return true;
    default: return false;
  }
}

std::string MultiplierSpec::constraints() const {
  switch (kind) {
    case MultiplierKind::M_eps: return "x1 x2 (x1+x2) != 0, |x1| >= |x2|";
    case MultiplierKind::M3_star:
      return "x = x1+x2+x3, x x1 x2 x3 != 0, (x1+x2)(x2+x3)(x3+x1) != 0, max|.| <= 2 min|.| over x, x1, x2, x3";
    default: return "x = x1+x2+x3, x x1 x2 x3 != 0, (x1+x2)(x2+x3)(x3+x1) != 0";
  }
}

const std::array<MultiplierKind, 8>& all_multiplier_kinds() { return kKinds; }

const char* to_string(MultiplierKind kind) {
  switch (kind) {
    case MultiplierKind::M_eps: return "M_eps";
    case MultiplierKind::M_mbound: return "M_mbound";
    case MultiplierKind::M1: return "M1";
    case MultiplierKind::M2: return "M2";
    case MultiplierKind::M3: return "M3";
    case MultiplierKind::M3_star: return "M3_star";
    case MultiplierKind::LB1: return "LB1";
    case MultiplierKind::LB2: return "LB2";
  }
  return "unknown";
}

std::optional<MultiplierKind> parse_multiplier_kind(const std::string& name) {
  for (MultiplierKind k : kKinds)
    if (name == to_string(k)) return k;
  return std::nullopt;
}

const char* to_string(Rejection r) {
  switch (r) {
    case Rejection::none: return "none";
    case Rejection::wrong_arity: return "wrong_arity";
    case Rejection::zero_frequency: return "zero_frequency";
    case Rejection::zero_output: return "zero_output";
    case Rejection::resonant: return "resonant";
    case Rejection::out_of_regime: return "out_of_regime";
  }
  return "unknown";
}

Evaluation evaluate(const MultiplierSpec& spec, std::span<const long long> freqs) {
  Evaluation e;
  e.rejection = classify(spec, freqs);
  if (!e.ok()) return e;
  long long box = 1;
  for (long long x : freqs) box = std::max(box, iabs(x));
  if (box > 1'000'000) throw_precondition("evaluate: frequencies beyond 10^6 are not supported");
  const Kernel k(spec, box);
  e.value = spec.arity() == 2 ? k.pair_value(freqs[0], freqs[1]) : k.triple_value(freqs[0], freqs[1], freqs[2]);
  return e;
}

ScanResult scan(const MultiplierSpec& spec, int N, int threads) {
  if (N < 4) throw_precondition("scan: need N >= 4");
  const auto t0 = std::chrono::steady_clock::now();
  const Kernel kernel(spec, N);
  const long long n = N;
  const std::size_t slices = static_cast<std::size_t>(N);  // x1 = 1..N

  // Pass 1: exact maximum per x1 slice.
  std::vector<double> slice_max(slices, 0.0);
  std::vector<unsigned long long> slice_evals(slices, 0);
  parallel_for(slices, resolve_threads(threads), [&](std::size_t i) {
    const long long x1 = static_cast<long long>(i) + 1;
    double best = 0.0;
    unsigned long long evals = 0;
    if (spec.arity() == 2) {
      for (long long x2 = -x1; x2 <= x1; ++x2) {
        if (x2 == 0 || x2 == -x1) continue;
        best = std::max(best, kernel.pair_value(x1, x2));
        ++evals;
      }
    } else {
      std::vector<double> buf(static_cast<std::size_t>(2 * n + 1));
      for_each_row(spec, n, x1, [&](long long x2, long long lo, long long hi) {
        kernel.row(x1, x2, lo, hi, buf.data());
        const long long len = hi - lo + 1;
        best = std::max(best, *std::max_element(buf.data(), buf.data() + len));
        evals += static_cast<unsigned long long>(len);
      });
    }
    slice_max[i] = best;
    slice_evals[i] = evals;
  });

  ScanResult res;
  res.spec = spec.name();
  res.box_size = N;
  for (std::size_t i = 0; i < slices; ++i) {
    res.sup = std::max(res.sup, slice_max[i]);
    res.evaluations += slice_evals[i];
  }

  // Pass 2: first canonical tuple (in lexicographic order) within the tie
  // tolerance of the supremum. Slices are searched in ascending x1.
  if (res.sup > 0.0) {
    const double thr = res.sup - kTieTolerance;
    std::vector<std::optional<Tuple>> hit(slices);
    std::vector<double> buf(static_cast<std::size_t>(2 * n + 1));
    for (std::size_t i = 0; i < slices; ++i) {
      if (slice_max[i] < thr) continue;
      const long long x1 = static_cast<long long>(i) + 1;
      std::optional<Tuple> found;
      if (spec.arity() == 2) {
        for (long long x2 = -x1; x2 <= x1 && !found; ++x2) {
          if (x2 == 0 || x2 == -x1) continue;
          if (kernel.pair_value(x1, x2) >= thr) found = Tuple{x1, x2, 0};
        }
      } else {
        for_each_row(spec, n, x1, [&](long long x2, long long lo, long long hi) {
          if (found) return;
          kernel.row(x1, x2, lo, hi, buf.data());
          for (long long j = 0; j <= hi - lo; ++j)
            if (buf[static_cast<std::size_t>(j)] >= thr) {
              found = Tuple{x1, x2, lo + j};
              return;
            }
        });
      }
      if (found) {
        res.argmax = *found;
        break;
      }
    }
  }
  res.wall_ms = elapsed_ms(t0);
  return res;
}

ScanResult scan_naive(const MultiplierSpec& spec, int N) {
  if (N < 1) throw_precondition("scan_naive: need N >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  struct Hit {
    double v;
    Tuple t;
  };
  std::vector<Hit> hits;
  ScanResult res;
  res.spec = spec.name();
  res.box_size = N;
  const long long n = N;
  auto visit = [&](std::span<const long long> f) {
    ++res.evaluations;
    const Evaluation e = evaluate(spec, f);
    if (!e.ok()) return;
    Tuple t{f[0], f[1], f.size() > 2 ? f[2] : 0};
    hits.push_back({e.value, canonical(spec, t)});
    res.sup = std::max(res.sup, e.value);
  };
  for (long long x1 = -n; x1 <= n; ++x1)
    for (long long x2 = -n; x2 <= n; ++x2) {
      if (spec.arity() == 2) {
        const long long f[2] = {x1, x2};
        visit(f);
        continue;
      }
      for (long long x3 = -n; x3 <= n; ++x3) {
        const long long f[3] = {x1, x2, x3};
        visit(f);
      }
    }
  bool have = false;
  for (const Hit& h : hits) {
    if (h.v < res.sup - kTieTolerance) continue;
    if (!have || h.t < res.argmax) res.argmax = h.t, have = true;
  }
  res.wall_ms = elapsed_ms(t0);
  return res;
}

GrowthTrend growth_trend(const MultiplierSpec& spec, const std::vector<int>& Ns, int threads) {
  if (Ns.size() < 3) throw_precondition("growth_trend: need at least three box sizes");
  for (std::size_t i = 1; i < Ns.size(); ++i)
    if (Ns[i] != 2 * Ns[i - 1]) throw_precondition("growth_trend: box sizes must double");
  GrowthTrend g;
  for (int N : Ns) g.scans.push_back(scan(spec, N, threads));
  // Values are taken relative to the first scan so that a constant sup
  // gives a slope of exactly zero.
  std::vector<double> lx, ly;
  for (const ScanResult& r : g.scans) {
    if (!(r.sup > 0.0)) throw NumericError("growth_trend: scan of " + spec.name() + " has zero supremum");
    lx.push_back(std::log(static_cast<double>(r.box_size) / g.scans.front().box_size));
    ly.push_back(std::log(r.sup) - std::log(g.scans.front().sup));
  }
  const double m = static_cast<double>(lx.size());
  double mx = 0.0;
  for (double v : lx) mx += v / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * ly[i];
  }
  g.exponent = sxy / sxx;
  for (std::size_t i = 1; i < g.scans.size(); ++i)
    g.growth_per_doubling.push_back(g.scans[i].sup / g.scans[i - 1].sup - 1.0);
  return g;
}

}  // namespace kdvlab
