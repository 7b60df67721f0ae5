#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavebasis/errors.hpp"
#include "wavebasis/oracle.hpp"
#include "wavebasis/spectra.hpp"

using namespace wavebasis;

namespace {
const PhysicalScales norm = PhysicalScales::normalized();
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("harmonic certification: exact spectrum to 1e-8") {
  // this check certifies the oracle before it judges anything else
  const PotentialSpec well = HarmonicPotential{1.0};
  for (int n = 0; n <= 5; ++n) {
    const double exact = norm.hbar * 1.0 * (n + 0.5);
    const double e = numerov_energy_converged(well, norm, n, 1e-9, 3);
    CHECK(e == doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("node counts, parity, and decay") {
  const PotentialSpec harmonic = HarmonicPotential{1.0};
  const Grid grid{-16.0, 16.0, 32000};
  for (int n = 0; n <= 5; ++n) {
    const auto res = numerov_eigensolve(harmonic, norm, grid, n);
    CHECK(res.node_count == n);
    CHECK((res.parity == (n % 2 == 0 ? Parity::even : Parity::odd)));
    double peak = 0.0;
    for (double u : res.u) peak = std::max(peak, std::abs(u));
    CHECK(std::abs(res.u.front()) <= 1e-6 * peak);
    CHECK(std::abs(res.u.back()) <= 1e-6 * peak);
  }

  const PotentialSpec singular = SingularPotential{1.0, 0.5};
  for (int n = 0; n <= 5; ++n) {
    const auto res =
        numerov_eigensolve(singular, norm, default_oracle_grid(singular, norm, n), n);
    CHECK(res.node_count == n);
  }
}

TEST_CASE("singular well eigenvalues") {
  const PotentialSpec well = SingularPotential{1.0, 0.5};
  const double e0 = numerov_energy_converged(well, norm, 0, 1.2e-3, 3);
  const double e1 = numerov_energy_converged(well, norm, 1, 1.2e-3, 3);
  CHECK(e0 == doctest::Approx(-1.6534).epsilon(0.01));
  CHECK(e1 == doctest::Approx(-0.43804).epsilon(0.001));
}

TEST_CASE("hard wall levels") {
  const PotentialSpec wall = HardWallPotential{1.0};
  const double e0 = numerov_energy_converged(wall, norm, 0, 1e-9, 3);
  CHECK(e0 == doctest::Approx(pi * pi / 4.0).epsilon(1e-8));
  const double e1 = numerov_energy_converged(wall, norm, 1, 1e-9, 3);
  CHECK(e1 == doctest::Approx(pi * pi).epsilon(1e-8));
}

TEST_CASE("grid halving changes the eigenvalue below 1e-8") {
  const PotentialSpec well = HarmonicPotential{1.0};
  Grid grid = default_oracle_grid(well, norm, 1);
  const double e_h = numerov_eigensolve(well, norm, grid, 1).E;
  grid.n_points *= 2;
  const double e_h2 = numerov_eigensolve(well, norm, grid, 1).E;
  CHECK(std::abs(e_h2 - e_h) <= 1e-8 * std::abs(e_h2));
}

TEST_CASE("eigenfunction orthogonality proxy") {
  const PotentialSpec well = HarmonicPotential{1.0};
  const Grid grid{-14.0, 14.0, 28000};
  std::vector<OracleEigenresult> states;
  for (int n = 0; n <= 3; ++n) states.push_back(numerov_eigensolve(well, norm, grid, n));
  const double h = states[0].x[1] - states[0].x[0];
  for (std::size_t a = 0; a < states.size(); ++a)
    for (std::size_t b = a + 1; b < states.size(); ++b) {
      REQUIRE(states[a].u.size() == states[b].u.size());
      double dot = 0.0;
      for (std::size_t i = 0; i < states[a].u.size(); ++i)
        dot += states[a].u[i] * states[b].u[i] * h;
      CHECK(std::abs(dot) <= 1e-6);
    }
}

TEST_CASE("finite flat well against the matching condition root") {
  // depth 4, half-width 1: even states solve k tan(k) = sqrt(4 - k^2);
  // reference root computed independently to machine precision
  const double e0_exact = -2.9393749317817246;
  const PotentialSpec wide = PiecewiseConstantPotential{{-12.0, -1.0, 1.0, 12.0},
                                                        {0.0, -4.0, 0.0}};
  const auto r = numerov_eigensolve(wide, norm, Grid{-12.0, 12.0, 48000}, 0);
  CHECK(r.E == doctest::Approx(e0_exact).epsilon(1e-6));
  CHECK(r.node_count == 0);

  // excited states cannot decay to 1e-6 inside this domain
  CHECK_THROWS_AS(numerov_eigensolve(wide, norm, Grid{-12.0, 12.0, 48000}, 1),
                  TruncationError);
}

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid({-1.0, 1.0, 32}).validate(), PreconditionError);
  CHECK_THROWS_AS(Grid({1.0, -1.0, 1000}).validate(), PreconditionError);
  CHECK(Grid({0.0, 1.0, 101}).h() == doctest::Approx(0.01));
}

TEST_CASE("even potential required") {
  const PotentialSpec lopsided = TabulatedPotential{{-1.0, 0.0, 1.0}, {0.0, 1.0, 5.0}};
  CHECK_THROWS_AS(numerov_eigensolve(lopsided, norm, Grid{-1.0, 1.0, 1000}, 0),
                  PreconditionError);
}

TEST_CASE("truncation error when the domain cannot grow") {
  const PotentialSpec well = HarmonicPotential{1.0};
  ShootingOptions opts;
  opts.max_domain_doublings = 0;
  CHECK_THROWS_AS(numerov_eigensolve(well, norm, Grid{-1.0, 1.0, 2000}, 0, opts),
                  TruncationError);
}

TEST_CASE("integrate_ivp reproduces cos(kx)") {
  const double k = 2.0;
  const KsqProfile prof(PiecewiseConstantPotential{{-10.0, 10.0}, {-k * k}}, norm);
  const Grid grid{0.0, 2.0 * pi / k, 8001};
  const auto u = integrate_ivp(prof, 0.0, 1.0, 0.0, grid);
  double worst = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x_min + i * grid.h();
    worst = std::max(worst, std::abs(u[i] - std::cos(k * x)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("integrate_ivp is self-consistent under step halving") {
  // the cross-check against piecewise transfer matrices lives in test_dtmm
  const KsqProfile airy(TabulatedPotential{{0.0, 2.0}, {0.0, 2.0}}, norm);
  const auto u = integrate_ivp(airy, 0.0, 1.0, 0.0, Grid{0.0, 2.0, 20001});
  const auto u2 = integrate_ivp(airy, 0.0, 1.0, 0.0, Grid{0.0, 2.0, 40001});
  CHECK(u.back() == doctest::Approx(u2.back()).epsilon(1e-10));
}

TEST_CASE("integrate_ivp flags too-coarse grids") {
  const double k = 40.0;
  const KsqProfile prof(PiecewiseConstantPotential{{-100.0, 100.0}, {-k * k}}, norm);
  CHECK_THROWS_AS(integrate_ivp(prof, 0.0, 1.0, 0.0, Grid{0.0, 50.0, 64}), AccuracyError);
}

TEST_CASE("singular even ground state has no interior nodes") {
  const PotentialSpec well = SingularPotential{1.0, 0.5};
  const auto res = numerov_eigensolve(well, norm, default_oracle_grid(well, norm, 0), 0);
  CHECK(res.node_count == 0);
  CHECK((res.parity == Parity::even));
  // even-state trace from the IVP at the eigenvalue: no sign change inside
  // the classically allowed region
  const KsqProfile prof(well, norm);
  const double xi = prof.turning_point(res.E).xi;
  const Grid grid{1e-4, 0.95 * xi, 4001};
  const auto u = integrate_ivp(prof, res.E, 1.0, 0.0, grid);
  for (double v : u) CHECK(v > 0.0);
}
