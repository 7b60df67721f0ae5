#include "wavebasis/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "wavebasis/errors.hpp"
#include "wavebasis/log.hpp"

namespace wavebasis {

namespace {

constexpr double pi = 3.14159265358979323846;

}  // namespace

double power_law_energy(double U, double alpha, int n, const PhysicalScales& scales) {
  if (!(U > 0.0) || !(alpha > 0.0))
    throw PreconditionError("power_law_energy: U and alpha must be positive");
  if (n < 0) throw PreconditionError("power_law_energy: n must be >= 0");
  const double base = pi * pi * scales.hbar * scales.hbar / (8.0 * scales.mass) *
                      (1.0 + 1.0 / alpha) * std::pow(U, 2.0 / alpha);
  return std::pow(base, alpha / (alpha + 2.0)) *
         std::pow(n + 0.5, 2.0 * alpha / (alpha + 2.0));
}

double wkb_quarkonium_energy(double U, int n, const PhysicalScales& scales) {
  if (!(U > 0.0)) throw PreconditionError("wkb_quarkonium_energy: U must be positive");
  if (n < 0) throw PreconditionError("wkb_quarkonium_energy: n must be >= 0");
  const double base =
      9.0 * pi * pi * scales.hbar * scales.hbar * U * U / (32.0 * scales.mass);
  return std::cbrt(base) * std::pow(n + 0.5, 2.0 / 3.0);
}

double infinite_well_energy(int n, const PhysicalScales& scales, double half_width) {
  if (n < 1) throw PreconditionError("infinite_well_energy: n must be >= 1");
  if (!(half_width > 0.0))
    throw PreconditionError("infinite_well_energy: half_width must be positive");
  const double k = pi * n / (2.0 * half_width);
  return scales.hbar2_over_2m() * k * k;
}

double singular_energy(double U, double beta, int n, const PhysicalScales& scales) {
  if (!(beta > 0.0 && beta < 1.0))
    throw PreconditionError(
        "singular_energy: ground state bounded from below only when 0 < beta < 1");
  if (!(U > 0.0)) throw PreconditionError("singular_energy: U must be positive");
  if (n < 0) throw PreconditionError("singular_energy: n must be >= 0");
  const double base = 8.0 * beta * std::pow(U, 2.0 / beta) * scales.mass /
                      (pi * pi * scales.hbar * scales.hbar * (1.0 - beta));
  const double expo = beta / (2.0 - beta);
  return -std::pow(base, expo) * std::pow(n + 0.5, -2.0 * expo);
}

namespace {

double default_phase_shift(const KsqProfile& profile) {
  return std::holds_alternative<HardWallPotential>(profile.spec()) ? 0.0 : 0.5;
}

// Accumulated quantization quantity Phi(E); returns 0 below the spectrum so
// the bracketing loop can expand through invalid trial energies.
double quantization_phase(const KsqProfile& profile, QuantizationRule rule, double E,
                          double quad_tol) {
  double xi;
  try {
    xi = profile.turning_point(E).xi;
  } catch (const Error&) {
    return 0.0;
  }
  if (rule == QuantizationRule::NewBases) {
    const double integral = profile.integrate_ksq(E, -xi, xi);
    return std::sqrt(std::max(2.0 * xi * integral, 0.0));
  }
  return profile.integrate_k(E, -xi, xi, quad_tol);
}

double guess_energy(const KsqProfile& profile, int n, double shift) {
  const auto& spec = profile.spec();
  const auto& scales = profile.scales();
  if (const auto* p = std::get_if<PowerLawPotential>(&spec))
    return power_law_energy(p->U, p->alpha, n, scales);
  if (const auto* p = std::get_if<HarmonicPotential>(&spec))
    return power_law_energy(0.5 * scales.mass * p->omega * p->omega, 2.0, n, scales);
  if (const auto* p = std::get_if<SingularPotential>(&spec))
    return singular_energy(p->U, p->beta, n, scales);
  if (const auto* p = std::get_if<HardWallPotential>(&spec)) {
    const double k = pi * (n + shift) / (2.0 * p->half_width);
    return scales.hbar2_over_2m() * std::max(k, 1e-8) * std::max(k, 1e-8);
  }
  // virial-style fallback: the potential at half the domain
  const auto [lo, hi] = profile.domain();
  const double x0 = std::isfinite(hi) ? 0.5 * hi : 1.0;
  return profile.potential(x0);
}

}  // namespace

EnergyLevel solve_quantization(const KsqProfile& profile, QuantizationRule rule, int n,
                               const QuantizationOptions& opts) {
  if (n < 0) throw PreconditionError("solve_quantization: n must be >= 0");
  if (!profile.even())
    throw PreconditionError("solve_quantization requires an even confining profile");
  const double shift = opts.phase_shift.value_or(default_phase_shift(profile));
  if (shift != 0.0 && shift != 0.5)
    throw PreconditionError("solve_quantization: phase_shift must be 0 or 1/2");

  const double target = pi * (n + shift);
  if (!(target > 0.0)) throw NoRootError("quantization target pi(n + shift) is not positive");

  auto residual = [&](double E) {
    return quantization_phase(profile, rule, E, opts.quad_tol) - target;
  };

  double lo, hi, f_lo, f_hi;
  const auto& spec = profile.spec();
  const bool windowed = std::holds_alternative<PiecewiseConstantPotential>(spec) ||
                        std::holds_alternative<TabulatedPotential>(spec);
  if (windowed && !profile.optical_source()) {
    // finite wells: the admissible band runs from the well floor to the
    // potential at the domain edge
    const auto [dom_lo, dom_hi] = profile.domain();
    double v_min = profile.potential(dom_hi);
    const int n_scan = 512;
    for (int i = 0; i <= n_scan; ++i)
      v_min = std::min(v_min,
                       profile.potential(dom_lo + (dom_hi - dom_lo) * i / double(n_scan)));
    const double v_edge = profile.potential(dom_hi);
    const double margin = 1e-9 * (std::abs(v_edge - v_min) + 1.0);
    lo = v_min + margin;
    hi = v_edge - margin;
    f_lo = residual(lo);
    f_hi = residual(hi);
    if (f_lo > 0.0 || f_hi < 0.0)
      throw NoRootError("solve_quantization: state " + std::to_string(n) +
                        " not bracketed inside the well");
  } else {
    const bool negative_spectrum = std::holds_alternative<SingularPotential>(spec);
    double guess = guess_energy(profile, n, shift);
    if (negative_spectrum && !(guess < 0.0)) guess = -1.0;
    if (!negative_spectrum && !(guess > 0.0)) guess = 1.0;

    // geometric expansion of [lo, hi] around the guess until the residual
    // changes sign (expansion factor 2, budget 60)
    lo = negative_spectrum ? guess * 1.5 : guess / 1.5;
    hi = negative_spectrum ? guess / 1.5 : guess * 1.5;
    f_lo = residual(lo);
    f_hi = residual(hi);
    int budget = 60;
    while (f_lo > 0.0 && budget-- > 0) {
      lo = negative_spectrum ? lo * 2.0 : lo / 2.0;
      f_lo = residual(lo);
    }
    while (f_hi < 0.0 && budget-- > 0) {
      hi = negative_spectrum ? hi / 2.0 : hi * 2.0;
      f_hi = residual(hi);
    }
    if (f_lo > 0.0 || f_hi < 0.0)
      throw NoRootError("solve_quantization: no bracket within the expansion budget");
  }

  // light monotonicity probe over the bracket
  {
    int sign_changes = 0;
    double prev = f_lo;
    for (int i = 1; i <= 8; ++i) {
      const double e = lo + (hi - lo) * i / 8.0;
      const double f = residual(e);
      if (prev * f < 0.0) ++sign_changes;
      prev = f;
    }
    if (sign_changes > 1)
      log::warn("solve_quantization: non-monotone phase detected in bracket [" +
                std::to_string(lo) + ", " + std::to_string(hi) + "]; returning lowest root");
  }

  for (int it = 0; it < 90; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = residual(mid);
    if (fm <= 0.0) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
    if (hi - lo <= 1e-6 * std::max(std::abs(lo), std::abs(hi))) break;
  }

  double x0 = lo, f0 = f_lo, x1 = hi, f1 = f_hi;
  for (int it = 0; it < 60; ++it) {
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!std::isfinite(x2) || x2 <= lo || x2 >= hi) x2 = 0.5 * (lo + hi);
    const double f2 = residual(x2);
    if (f2 <= 0.0)
      lo = x2;
    else
      hi = x2;
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    if (std::abs(x1 - x0) <= opts.rel_tol * std::abs(x1) || f2 == 0.0) break;
  }
  return EnergyLevel{n, x1, SpectrumMethod::quantization_root};
}

SpectrumComparison compare_spectra(const EnergySpectrum& a, const EnergySpectrum& b) {
  std::map<int, double> ref;
  for (const auto& lvl : b) ref[lvl.n] = lvl.E;
  SpectrumComparison out;
  for (const auto& lvl : a) {
    const auto it = ref.find(lvl.n);
    if (it == ref.end()) continue;
    SpectrumComparison::Row row;
    row.n = lvl.n;
    row.E_a = lvl.E;
    row.E_b = it->second;
    row.rel_err = std::abs(lvl.E - it->second) / std::abs(it->second);
    out.max_rel_err = std::max(out.max_rel_err, row.rel_err);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace wavebasis
