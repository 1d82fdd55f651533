#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "kdvlab/error.hpp"
#include "kdvlab/random_field.hpp"
#include "kdvlab/serialize.hpp"
#include "kdvlab/solver.hpp"
#include "kdvlab/spectral.hpp"
#include "support.hpp"

using namespace kdvlab;
using kdvlab::testing::smooth_field;

namespace {

SolverConfig config(int n, double dt, double t_end, int stride = 1) {
  SolverConfig c;
  c.max_freq = n;
  c.dt = dt;
  c.t_end = t_end;
  c.sample_stride = stride;
  return c;
}

double l2_distance(const FourierField& a, const FourierField& b) { return sobolev_norm(a - b, 0.0); }

}  // namespace

TEST_CASE("airy_propagate examples") {
  FourierField f(4, false, true);
  f.set(1, 1.0);
  CHECK(std::abs(airy_propagate(f, 2.0 * M_PI)[1] - 1.0) < 1e-15);
  FourierField g(4, false, true);
  g.set(2, 1.0);
  CHECK(std::abs(airy_propagate(g, M_PI / 8.0)[2] + 1.0) < 1e-15);

  const FourierField r = random_rough_field(32, RegularityParams{}, 3);
  for (double sigma : {-1.0, 0.0, 0.5, 2.0})
    CHECK(sobolev_norm(airy_propagate(r, 0.731), sigma) == doctest::Approx(sobolev_norm(r, sigma)).epsilon(1e-14));
  const FourierField two = airy_propagate(airy_propagate(r, 0.3), 0.45);
  CHECK(kdvlab::testing::rel_diff(two, airy_propagate(r, 0.75)) < 1e-12);
  CHECK(airy_propagate(r, 0.4).is_real());
}

TEST_CASE("SolverConfig validation") {
  CHECK_NOTHROW(config(16, 1e-3, 1.0, 10).validate());
  CHECK_THROWS_AS(config(16, 3e-3, 1.0).validate(), ConfigError);
  CHECK_THROWS_AS(config(16, 1e-3, 1.0, 7).validate(), ConfigError);
  CHECK_THROWS_AS(config(16, -1e-3, 1.0).validate(), ConfigError);
  CHECK(config(16, 1e-3, 1.0).steps() == 1000);
}

TEST_CASE("evolve: zero data, sampling and determinism") {
  const SolverConfig c = config(16, 1e-3, 0.1, 10);
  const Trajectory z = evolve(FourierField(16), c);
  REQUIRE(z.size() == 11);
  for (const auto& f : z.fields) CHECK(sobolev_norm(f, 0.0) == 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(z.times[i] == doctest::Approx(0.01 * i).epsilon(1e-12));
  CHECK(z.sample_dt() == doctest::Approx(0.01));

  const FourierField u0 = smooth_field(16, 1, 2.0, 0.5);
  const Trajectory a = evolve(u0, c), b = evolve(u0, c);
  CHECK(a.fields.front() == u0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.fields[i] == b.fields[i]);
    CHECK(a.fields[i][0] == Complex{});
    CHECK(a.fields[i].is_real());
  }
  CHECK(evolve_final(u0, c) == a.fields.back());
}

TEST_CASE("evolve rejects CFL violations and bad data") {
  const FourierField u0 = smooth_field(32, 1, 0.0, 5.0);
  SolverConfig c = config(32, 0.05, 1.0);
  CHECK(c.dt > cfl_limit(u0, c));
  CHECK_THROWS_AS(evolve(u0, c), ConfigError);
  CHECK_THROWS_AS(evolve(smooth_field(16, 1, 2.0, 0.1), c), PreconditionError);
  FourierField mean(32, true, false);
  mean.set(0, 1.0);
  CHECK_THROWS_AS(evolve(mean, c), PreconditionError);
}

TEST_CASE("small data follows the Airy flow up to quadratic error") {
  const FourierField base = smooth_field(16, 2, 2.0, 1.0);
  const SolverConfig c = config(16, 1e-3, 1.0, 1000);
  double gap[2];
  for (int k = 0; k < 2; ++k) {
    const double lambda = 1e-6 * (k + 1);
    const FourierField u0 = base.scaled(lambda);
    gap[k] = l2_distance(evolve_final(u0, c), airy_propagate(u0, 1.0));
  }
  CHECK(gap[0] > 0.0);
  CHECK(gap[0] < 1e-9);
  CHECK(gap[1] / gap[0] == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("one step matches the Taylor expansion") {
  const FourierField u0 = smooth_field(8, 3, 2.0, 0.5);
  const FourierField sq = dealiased_product(u0, u0);
  auto defect = [&](double dt) {
    const FourierField u1 = evolve_final(u0, config(8, dt, dt));
    double worst = 0.0;
    for (int xi = 1; xi <= 8; ++xi) {
      const Complex rhs = Complex(0.0, 1.0) * double(xi * xi * xi) * u0[xi] + Complex(0.0, xi) * sq[xi];
      worst = std::max(worst, std::abs((u1[xi] - u0[xi]) / dt - rhs));
    }
    return worst;
  };
  const double e1 = defect(1e-4), e2 = defect(5e-5);
  CHECK(e1 < 1e-1);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("conserved_quantities examples") {
  FourierField f(3, true, true);
  f.set(1, 1.0);
  const ConservedQuantities q = conserved_quantities(f);
  CHECK(q.mean == 0.0);
  CHECK(q.l2 == doctest::Approx(4.0 * M_PI).epsilon(1e-15));
  CHECK(q.hamiltonian == doctest::Approx(2.0 * M_PI).epsilon(1e-14));

  // u = 2 cos x + 2 cos 2x: integral of u^3 / 3 is 2 pi * (3 * 1 * 1 * 1 * 2) / 3 from
  // the triads (1, 1, -2) and permutations; cross-check against quadrature.
  FourierField g(4, true, true);
  g.set(1, 1.0);
  g.set(2, 1.0);
  double h = 0.0;
  const int m = 4096;
  for (int j = 0; j < m; ++j) {
    const double x = 2.0 * M_PI * j / m;
    const double u = 2.0 * std::cos(x) + 2.0 * std::cos(2.0 * x);
    const double ux = -2.0 * std::sin(x) - 4.0 * std::sin(2.0 * x);
    h += (ux * ux / 2.0 + u * u * u / 3.0) * 2.0 * M_PI / m;
  }
  CHECK(conserved_quantities(g).hamiltonian == doctest::Approx(h).epsilon(1e-12));

  const ConservedQuantities z = conserved_quantities(FourierField(5));
  CHECK(z.mean == 0.0);
  CHECK(z.l2 == 0.0);
  CHECK(z.hamiltonian == 0.0);
}

TEST_CASE("smooth data: conservation and time reversal") {
  const FourierField u0 = smooth_field(32, 4, 3.0, 0.3);
  const SolverConfig c = config(32, 1e-4, 1.0, 1000);
  const Trajectory tr = evolve(u0, c);
  const ConservedQuantities q0 = conserved_quantities(u0);
  const ConservedQuantities q1 = conserved_quantities(tr.fields.back());
  CHECK(q1.mean == 0.0);
  CHECK(std::abs(q1.l2 - q0.l2) / q0.l2 < 1e-8);
  CHECK(std::abs(q1.hamiltonian - q0.hamiltonian) / (1.0 + std::abs(q0.hamiltonian)) < 1e-6);

  const FourierField back = evolve_backward(tr.fields.back(), c);
  CHECK(std::sqrt(2.0 * M_PI) * l2_distance(back, u0) < 1e-7);
}

TEST_CASE("convergence_study") {
  // The asymptotic regime needs dt well below 1 / max|3 xi xi1 xi2|.
  const FourierField u0 = smooth_field(8, 5, 3.0, 0.5);
  std::vector<SolverConfig> dts;
  for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) dts.push_back(config(8, dt, 1.0, 1));
  const ConvergenceReport rep = convergence_study(u0, dts);
  CHECK(rep.kind == ConvergenceReport::Kind::temporal);
  REQUIRE(rep.ratios.size() == 2);
  for (double r : rep.ratios) CHECK(r == doctest::Approx(16.0).epsilon(0.25));
  CHECK(rep.fitted_order == doctest::Approx(4.0).epsilon(0.1));

  const ConvergenceReport same = convergence_study(u0, {dts[2], dts[2]});
  for (double e : same.errors) CHECK(e == 0.0);

  // Analytic data: a_xi = 0.3 e^{-|xi|}.
  FourierField a(32, true, true);
  for (int xi = 1; xi <= 32; ++xi) a.set(xi, 0.3 * std::exp(-double(xi)));
  std::vector<SolverConfig> ns;
  for (int n : {4, 8, 16, 32}) ns.push_back(config(n, 1e-3, 0.1, 1));
  const ConvergenceReport sp = convergence_study(a, ns);
  CHECK(sp.kind == ConvergenceReport::Kind::spatial);
  REQUIRE(sp.errors.size() == 3);
  CHECK(sp.errors[0] > sp.errors[1]);
  CHECK(sp.errors[1] > sp.errors[2]);
  // Beyond algebraic: each doubling gains far more than a fixed power would.
  CHECK(sp.errors[1] / sp.errors[2] > 10.0 * sp.errors[0] / sp.errors[1]);

  std::vector<SolverConfig> mixed = {config(8, 1e-2, 1.0), config(16, 5e-3, 1.0)};
  CHECK_THROWS(convergence_study(u0, mixed));
}

TEST_CASE("trajectory serialization round trip") {
  const FourierField u0 = smooth_field(8, 6, 2.0, 0.4);
  const Trajectory tr = evolve(u0, config(8, 1e-3, 0.05, 10));
  const auto dir = std::filesystem::temp_directory_path() / "kdvlab_traj_test";
  std::filesystem::remove_all(dir);
  write_trajectory(tr, dir);
  const Trajectory back = read_trajectory(dir);
  REQUIRE(back.size() == tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(back.times[i] == tr.times[i]);
    CHECK(back.fields[i] == tr.fields[i]);
  }
  CHECK(back.config.dt == tr.config.dt);
  const std::string csv = conserved_csv(tr);
  CHECK(csv.rfind("t,mean,l2,hamiltonian\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(tr.size() + 1));
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_trajectory(dir), IoError);
}
