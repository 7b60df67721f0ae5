#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wavebasis/errors.hpp"
#include "wavebasis/spectra.hpp"

using namespace wavebasis;

namespace {
const PhysicalScales norm = PhysicalScales::normalized();
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("power-law closed form: quarkonium and harmonic shapes") {
  // alpha = 1, U = 1, normalized: (pi^2 hbar^2 U^2 / 4m)^(1/3) (n+1/2)^(2/3)
  for (int n = 0; n <= 4; ++n) {
    const double expect =
        std::cbrt(pi * pi * norm.hbar * norm.hbar / (4.0 * norm.mass)) *
        std::pow(n + 0.5, 2.0 / 3.0);
    CHECK(power_law_energy(1.0, 1.0, n, norm) == doctest::Approx(expect).epsilon(1e-14));
  }

  // alpha = 2 with U = m Omega^2 / 2: sqrt(3 pi^2/32) hbar Omega (n + 1/2)
  const double omega = 1.7;
  const double u_eff = 0.5 * norm.mass * omega * omega;
  const double ratio_expect = std::sqrt(3.0 * pi * pi / 32.0);
  for (int n = 0; n <= 5; ++n) {
    const double ratio =
        power_law_energy(u_eff, 2.0, n, norm) / (norm.hbar * omega * (n + 0.5));
    CHECK(ratio == doctest::Approx(ratio_expect).epsilon(1e-12));
  }
  CHECK(std::abs(1.0 - ratio_expect) == doctest::Approx(0.038).epsilon(0.03));
}

TEST_CASE("quarkonium WKB contrast: factor 2/9^(1/3) for every n") {
  const double expect = 2.0 / std::cbrt(9.0);
  for (int n = 0; n <= 7; ++n) {
    const double ratio =
        power_law_energy(1.0, 1.0, n, norm) / wkb_quarkonium_energy(1.0, n, norm);
    CHECK(ratio == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(expect == doctest::Approx(0.96150).epsilon(1e-4));

  // n = 0, U = 1 normalized: (9 pi^2/16)^(1/3) (1/2)^(2/3)
  const double e0 = std::cbrt(9.0 * pi * pi / 16.0) * std::pow(0.5, 2.0 / 3.0);
  CHECK(wkb_quarkonium_energy(1.0, 0, norm) == doctest::Approx(e0).epsilon(1e-14));
}

TEST_CASE("infinite well closed form") {
  CHECK(infinite_well_energy(1, norm, 1.0) == doctest::Approx(pi * pi / 4.0).epsilon(1e-14));
  CHECK(infinite_well_energy(2, norm, 1.0) / infinite_well_energy(1, norm, 1.0) ==
        doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(infinite_well_energy(0, norm, 1.0), PreconditionError);
}

TEST_CASE("singular well spectrum values") {
  // beta = 1/2, U = 1, normalized: E_n = -[(pi/2)(n + 1/2)]^(-2/3)
  for (int n = 0; n <= 4; ++n) {
    const double expect = -std::pow(0.5 * pi * (n + 0.5), -2.0 / 3.0);
    CHECK(singular_energy(1.0, 0.5, n, norm) == doctest::Approx(expect).epsilon(1e-14));
  }
  CHECK(singular_energy(1.0, 0.5, 0, norm) == doctest::Approx(-1.17474).epsilon(1e-5));
  CHECK(singular_energy(1.0, 0.5, 1, norm) == doctest::Approx(-0.56475).epsilon(1e-5));
  CHECK(singular_energy(1.0, 0.5, 0, norm) ==
        doctest::Approx(-std::cbrt(16.0 / (pi * pi))).epsilon(1e-14));
}

TEST_CASE("singular spectrum shape: negative, increasing, divergent at beta -> 1") {
  double prev = singular_energy(1.0, 0.5, 0, norm);
  for (int n = 1; n <= 6; ++n) {
    const double e = singular_energy(1.0, 0.5, n, norm);
    CHECK(e < 0.0);
    CHECK(e > prev);
    prev = e;
  }
  const double e_99 = singular_energy(1.0, 0.99, 0, norm);
  const double e_999 = singular_energy(1.0, 0.999, 0, norm);
  CHECK(std::abs(e_999) > std::abs(e_99));
  CHECK(std::abs(e_99) > 100.0 * std::abs(singular_energy(1.0, 0.5, 0, norm)));
  CHECK_THROWS_AS(singular_energy(1.0, 1.0, 0, norm), PreconditionError);
}

TEST_CASE("spectral scaling law is parameter-free") {
  std::mt19937 gen(5u);
  std::uniform_real_distribution<double> ud(0.2, 5.0), md(0.1, 3.0), ad(0.5, 4.0);
  for (int trial = 0; trial < 30; ++trial) {
    const PhysicalScales scales{md(gen), md(gen)};
    const double U = ud(gen), alpha = ad(gen);
    for (int n = 1; n <= 4; ++n) {
      const double ratio =
          power_law_energy(U, alpha, n, scales) / power_law_energy(U, alpha, 0, scales);
      const double expect = std::pow((n + 0.5) / 0.5, 2.0 * alpha / (alpha + 2.0));
      CHECK(ratio == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("growth exponents via log ratios") {
  // quarkonium ~ (n+1/2)^(2/3), harmonic ~ (n+1/2)
  auto slope = [](auto f) {
    const double r = f(7) / f(3);
    return std::log(r) / std::log(7.5 / 3.5);
  };
  CHECK(slope([](int n) { return power_law_energy(1.0, 1.0, n, norm); }) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(slope([](int n) { return power_law_energy(1.0, 2.0, n, norm); }) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("solve_quantization reproduces the closed forms") {
  const KsqProfile harm(PowerLawPotential{0.25, 2.0}, norm);  // U = m Omega^2/2, Omega = 1
  for (int n = 0; n <= 4; ++n) {
    const double root = solve_quantization(harm, QuantizationRule::NewBases, n).E;
    CHECK(root == doctest::Approx(power_law_energy(0.25, 2.0, n, norm)).epsilon(1e-9));
    // WKB quantization is exact for alpha = 2
    const double wkb = solve_quantization(harm, QuantizationRule::WKB, n).E;
    CHECK(wkb == doctest::Approx(norm.hbar * 1.0 * (n + 0.5)).epsilon(1e-9));
  }

  const KsqProfile quark(PowerLawPotential{1.0, 1.0}, norm);
  for (int n = 0; n <= 3; ++n) {
    CHECK(solve_quantization(quark, QuantizationRule::NewBases, n).E ==
          doctest::Approx(power_law_energy(1.0, 1.0, n, norm)).epsilon(1e-9));
    CHECK(solve_quantization(quark, QuantizationRule::WKB, n).E ==
          doctest::Approx(wkb_quarkonium_energy(1.0, n, norm)).epsilon(1e-9));
  }

  const KsqProfile sing(SingularPotential{1.0, 0.5}, norm);
  for (int n = 0; n <= 3; ++n)
    CHECK(solve_quantization(sing, QuantizationRule::NewBases, n).E ==
          doctest::Approx(singular_energy(1.0, 0.5, n, norm)).epsilon(1e-9));
}

TEST_CASE("hard-wall quantization with zero phase shift") {
  const KsqProfile wall(HardWallPotential{1.0}, norm);
  for (int n = 1; n <= 3; ++n) {
    const auto level = solve_quantization(wall, QuantizationRule::NewBases, n);
    CHECK(level.E == doctest::Approx(infinite_well_energy(n, norm, 1.0)).epsilon(1e-9));
    CHECK(solve_quantization(wall, QuantizationRule::WKB, n).E ==
          doctest::Approx(infinite_well_energy(n, norm, 1.0)).epsilon(1e-9));
  }
  // explicit half shift moves the levels to (n + 1/2)^2
  QuantizationOptions opts;
  opts.phase_shift = 0.5;
  const double shifted = solve_quantization(wall, QuantizationRule::NewBases, 1, opts).E;
  const double k = pi * 1.5 / 2.0;
  CHECK(shifted == doctest::Approx(norm.hbar2_over_2m() * k * k).epsilon(1e-9));

  opts.phase_shift = 0.3;
  CHECK_THROWS_AS(solve_quantization(wall, QuantizationRule::NewBases, 1, opts),
                  PreconditionError);
}

TEST_CASE("alpha -> infinity approaches the hard-wall form with the half shift") {
  const double alpha = 1e8;
  for (int n = 0; n <= 3; ++n) {
    const double e = power_law_energy(1.0, alpha, n, norm);
    const double wall_form =
        pi * pi * norm.hbar * norm.hbar / (8.0 * norm.mass) * (n + 0.5) * (n + 0.5);
    CHECK(e == doctest::Approx(wall_form).epsilon(1e-6));
  }
}

TEST_CASE("compare_spectra") {
  EnergySpectrum a, b;
  for (int n = 0; n <= 3; ++n) {
    a.push_back({n, singular_energy(1.0, 0.5, n, norm), SpectrumMethod::closed_form});
    b.push_back({n, singular_energy(1.0, 0.5, n, norm), SpectrumMethod::closed_form});
  }
  auto same = compare_spectra(a, b);
  CHECK(same.max_rel_err == 0.0);
  REQUIRE(same.rows.size() == 4);

  // reference values reproduced by the oracle for beta = 1/2
  EnergySpectrum reference = {{0, -1.6534, SpectrumMethod::oracle},
                              {1, -0.43804, SpectrumMethod::oracle}};
  EnergySpectrum estimate = {{0, singular_energy(1.0, 0.5, 0, norm), SpectrumMethod::closed_form},
                             {1, singular_energy(1.0, 0.5, 1, norm), SpectrumMethod::closed_form}};
  const auto cmp = compare_spectra(estimate, reference);
  REQUIRE(cmp.rows.size() == 2);
  CHECK(cmp.rows[0].rel_err == doctest::Approx(0.289).epsilon(0.01));
  CHECK(cmp.rows[1].rel_err == doctest::Approx(0.289).epsilon(0.01));
}

TEST_CASE("quantization-root levels increase with n") {
  const KsqProfile quark(PowerLawPotential{1.0, 1.0}, norm);
  double prev = -1.0;
  for (int n = 0; n <= 4; ++n) {
    const double e = solve_quantization(quark, QuantizationRule::NewBases, n).E;
    CHECK(e > prev);
    prev = e;
  }
}
