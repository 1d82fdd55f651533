#include <cmath>
#include <numeric>

#include "doctest.h"
#include "kdvlab/error.hpp"
#include "kdvlab/random_field.hpp"
#include "kdvlab/serialize.hpp"
#include "kdvlab/spectral.hpp"
#include "support.hpp"

using namespace kdvlab;
using kdvlab::testing::gaussian_field;
using kdvlab::testing::single_mode;

namespace {

bool conj_symmetric(const FourierField& f) {
  for (int xi = 0; xi <= f.max_freq(); ++xi)
    if (f[-xi] != std::conj(f[xi])) return false;
  return f[0].imag() == 0.0;
}

FourierField pair_mode(int n) {
  FourierField f(n, true, true);
  f.set(1, 1.0);
  return f;
}

}  // namespace

TEST_CASE("FourierField flags are enforced exactly") {
  FourierField f(4, true, true);
  f.set(2, Complex(1.0, 2.0));
  CHECK(f[-2] == Complex(1.0, -2.0));
  CHECK(f[7] == Complex{});
  CHECK_THROWS_AS(f.set(0, 1.0), PreconditionError);
  CHECK_THROWS_AS(f.set(5, 1.0), PreconditionError);

  std::vector<Complex> bad(9);
  bad[5] = Complex(1.0, 0.0);  // xi = 1 without its mirror
  CHECK_THROWS_AS(FourierField(4, bad, true, false), PreconditionError);
  CHECK_NOTHROW(FourierField(4, bad, false, true));

  FourierField r(4, true, false);
  CHECK_THROWS_AS(r.set(0, Complex(0.0, 1.0)), PreconditionError);
}

TEST_CASE("truncation and reflection") {
  const FourierField f = gaussian_field(8, 3);
  const FourierField t = f.truncated(4);
  CHECK(t.max_freq() == 4);
  CHECK(t[4] == f[4]);
  CHECK(t[5] == Complex{});
  CHECK(f.truncated(12).truncated(8) == f);
  const FourierField r = f.reflected();
  for (int xi = -8; xi <= 8; ++xi) CHECK(r[xi] == f[-xi]);
}

TEST_CASE("apply_multiplier examples") {
  FourierField d = single_mode(3, 1, 1.0, false);
  d = apply_multiplier(d, MultiplierSymbol::derivative());
  CHECK(d[1] == Complex(0.0, 1.0));

  const FourierField b = apply_multiplier(pair_mode(3), MultiplierSymbol::bessel(1.0));
  CHECK(b[1] == Complex(2.0, 0.0));
  CHECK(b[-1] == Complex(2.0, 0.0));

  FourierField g = single_mode(3, 2, Complex(0.0, 6.0), false);
  g = apply_multiplier(apply_multiplier(g, MultiplierSymbol::inverse_derivative()), MultiplierSymbol::derivative());
  CHECK(std::abs(g[2] - Complex(0.0, 6.0)) < 1e-15);

  FourierField m(3, true, false);
  m.set(0, 5.0);
  CHECK_THROWS_AS(apply_multiplier(m, MultiplierSymbol::inverse_derivative()), PreconditionError);
  const FourierField k = apply_multiplier(m, MultiplierSymbol::mean_kill());
  CHECK(k[0] == Complex{});
  CHECK(k.is_mean_zero());
}

TEST_CASE("multipliers keep real fields real") {
  const FourierField f = gaussian_field(16, 5);
  const MultiplierSymbol syms[] = {MultiplierSymbol::bessel(-0.3), MultiplierSymbol::derivative(),
                                   MultiplierSymbol::inverse_derivative(),
                                   MultiplierSymbol::bessel_inverse_derivative(0.25), MultiplierSymbol::mean_kill()};
  for (const auto& sym : syms) {
    const FourierField g = apply_multiplier(f, sym);
    CHECK(g.is_real());
    CHECK(conj_symmetric(g));
  }
}

TEST_CASE("bessel(sigma) then bessel(-sigma) is the identity") {
  const FourierField f = gaussian_field(64, 7, true, false);
  for (double sigma : {0.25, 1.0, 3.5}) {
    const FourierField g =
        apply_multiplier(apply_multiplier(f, MultiplierSymbol::bessel(sigma)), MultiplierSymbol::bessel(-sigma));
    CHECK(kdvlab::testing::rel_diff(f, g) < 1e-13);
  }
}

TEST_CASE("sobolev_norm examples and properties") {
  CHECK(sobolev_norm(pair_mode(2), 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sobolev_norm(pair_mode(2), 1.0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sobolev_norm(FourierField(5), -0.7) == 0.0);

  const FourierField f = gaussian_field(20, 9, true, false);
  double prev = 0.0;
  for (double sigma = -2.0; sigma <= 2.0; sigma += 0.25) {
    const double v = sobolev_norm(f, sigma);
    CHECK(v >= prev);
    prev = v;
  }
  double parseval = 0.0;
  for (const Complex& z : f.coeffs()) parseval += std::norm(z);
  CHECK(sobolev_norm(f, 0.0) * sobolev_norm(f, 0.0) == doctest::Approx(parseval).epsilon(1e-15));
}

TEST_CASE("dealiased_product examples") {
  const FourierField sq = dealiased_product(pair_mode(4), pair_mode(4));
  CHECK(std::abs(sq[0] - 2.0) < 1e-15);
  CHECK(std::abs(sq[2] - 1.0) < 1e-15);
  CHECK(std::abs(sq[-2] - 1.0) < 1e-15);
  for (int xi : {-4, -3, -1, 1, 3, 4}) CHECK(std::abs(sq[xi]) < 1e-15);

  const FourierField u = gaussian_field(8, 1);
  const FourierField zero(8);
  CHECK(sobolev_norm(dealiased_product(u, zero), 0.0) == 0.0);

  CHECK_THROWS_AS(dealiased_product(u, FourierField(9)), PreconditionError);
}

TEST_CASE("dealiased_product matches the double-loop convolution") {
  int checked = 0;
  for (int n = 1; n <= 16; ++n)
    for (std::uint64_t seed = 0; seed < 100 / 16 + 1; ++seed, ++checked) {
      for (bool real : {true, false}) {
        const FourierField u = gaussian_field(n, 100 * n + seed, real, false);
        const FourierField v = gaussian_field(n, 200 * n + seed, real, false);
        for (std::optional<int> band : {std::optional<int>{}, std::optional<int>{2 * n}}) {
          const FourierField p = dealiased_product(u, v, band);
          const FourierField q = direct_convolution(u, v, band);
          CHECK(kdvlab::testing::rel_diff(p, q) < 1e-13);
          if (real) CHECK(conj_symmetric(p));
        }
      }
    }
  CHECK(checked >= 100);
}

TEST_CASE("dealiased_product is bilinear and commutative") {
  const FourierField u = gaussian_field(12, 1, false, false), v = gaussian_field(12, 2, false, false),
                     w = gaussian_field(12, 3, false, false);
  CHECK(kdvlab::testing::rel_diff(dealiased_product(u, v), dealiased_product(v, u)) < 1e-14);
  const FourierField lhs = dealiased_product(u + w.scaled(2.0), v);
  const FourierField rhs = dealiased_product(u, v) + dealiased_product(w, v).scaled(2.0);
  CHECK(kdvlab::testing::rel_diff(lhs, rhs) < 1e-13);
}

TEST_CASE("random_rough_field") {
  const RegularityParams p;
  const FourierField a = random_rough_field(64, p, 42);
  const FourierField b = random_rough_field(64, p, 42);
  CHECK(a == b);
  CHECK(!(a == random_rough_field(64, p, 43)));
  CHECK(a.is_real());
  CHECK(a.is_mean_zero());
  CHECK(conj_symmetric(a));

  CHECK(std::abs(a[1]) == doctest::Approx(std::pow(2.0, p.s - 0.5 - p.eps_tail)).epsilon(1e-15));
  for (int xi = 1; xi <= 64; ++xi)
    CHECK(std::abs(a[xi]) == doctest::Approx(std::pow(1.0 + xi, p.s - 0.5 - p.eps_tail)).epsilon(1e-14));

  // H^{-s} certificate: 2 sum_{xi>=1} <xi>^{-1-2 eps} bounds the norm for every N.
  double bound = 0.0;
  for (int xi = 1; xi <= 2000000; ++xi) bound += 2.0 * std::pow(1.0 + xi, -1.0 - 2.0 * p.eps_tail);
  bound += 2.0 * std::pow(2000001.0, -2.0 * p.eps_tail) / (2.0 * p.eps_tail);  // integral tail
  for (int n : {2, 16, 256, 4096}) {
    const double h = sobolev_norm(random_rough_field(n, p, 1), -p.s);
    CHECK(h * h <= bound);
  }

  // Nested across sizes.
  CHECK(random_rough_field(256, p, 5).truncated(64) == random_rough_field(64, p, 5));
  CHECK_THROWS_AS(random_rough_field(1, p, 1), PreconditionError);
}

TEST_CASE("airy_symbol") {
  for (long long xi = -50; xi <= 50; ++xi) {
    CHECK(airy_symbol(-xi, 0.37) == std::conj(airy_symbol(xi, 0.37)));
    CHECK(std::abs(std::abs(airy_symbol(xi, 123.4)) - 1.0) < 1e-15);
  }
  CHECK(std::abs(airy_symbol(1, 2.0 * M_PI) - 1.0) < 1e-15);
  CHECK(std::abs(airy_symbol(2, M_PI / 8.0) + 1.0) < 1e-15);
}

TEST_CASE("field JSON round trip is bit exact") {
  for (bool real : {true, false}) {
    const FourierField f = gaussian_field(17, 8, real, !real);
    const FourierField g = field_from_json(nlohmann::json::parse(field_to_json(f).dump()));
    CHECK(f == g);
    CHECK(g.is_real() == real);
  }
  CHECK_THROWS_AS(field_from_json(nlohmann::json{{"n", 2}}), IoError);
}
