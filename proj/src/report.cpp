#include "wavebasis/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "wavebasis/bases.hpp"
#include "wavebasis/bloch.hpp"
#include "wavebasis/dtmm.hpp"
#include "wavebasis/oracle.hpp"
#include "wavebasis/spectra.hpp"

namespace wavebasis {

namespace {

constexpr double pi = 3.14159265358979323846;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(8);
  os << v;
  return os.str();
}

// k^2 = const built as a flat potential at drive E = 0
KsqProfile constant_ksq_profile(double ksq_value, double half_width = 50.0) {
  return KsqProfile(
      PiecewiseConstantPotential{{-half_width, half_width}, {-ksq_value}},
      PhysicalScales::normalized());
}

CheckResult check_singular_closed_form() {
  CheckResult r;
  r.id = "singular-closed-form-spectrum";
  const auto scales = PhysicalScales::normalized();
  const double e0 = singular_energy(1.0, 0.5, 0, scales);
  const double e1 = singular_energy(1.0, 0.5, 1, scales);
  const double ref0 = -1.17474, ref1 = -0.56475;
  r.pass = std::abs(e0 - ref0) <= 1e-4 && std::abs(e1 - ref1) <= 1e-4;
  r.detail = "E0=" + fmt(e0) + " (ref " + fmt(ref0) + "), E1=" + fmt(e1) + " (ref " +
             fmt(ref1) + "), tol 1e-4 abs";
  r.values = {{"E0", e0}, {"E1", e1}, {"ref0", ref0}, {"ref1", ref1}};
  return r;
}

CheckResult check_singular_oracle() {
  CheckResult r;
  r.id = "singular-oracle-reproduction";
  const auto scales = PhysicalScales::normalized();
  const PotentialSpec well = SingularPotential{1.0, 0.5};
  const double e0 = numerov_energy_converged(well, scales, 0, 1.2e-3, 3);
  const double e1 = numerov_energy_converged(well, scales, 1, 1.2e-3, 3);
  const double ref0 = -1.6534, ref1 = -0.43804;
  const double dev0 = std::abs(e0 - ref0) / std::abs(ref0);
  const double dev1 = std::abs(e1 - ref1) / std::abs(ref1);

  const double err0 = std::abs(singular_energy(1.0, 0.5, 0, scales) - e0) / std::abs(e0);
  const double err1 = std::abs(singular_energy(1.0, 0.5, 1, scales) - e1) / std::abs(e1);
  const bool errs_ok = std::abs(err0 - 0.289) <= 0.01 && std::abs(err1 - 0.289) <= 0.01;

  r.pass = dev0 <= 0.01 && dev1 <= 0.01 && errs_ok;
  r.detail = "oracle E0=" + fmt(e0) + " E1=" + fmt(e1) + " (refs " + fmt(ref0) + ", " +
             fmt(ref1) + " within 1%); closed-form errors " + fmt(err0) + ", " + fmt(err1) +
             " (28.9% +- 1pp)";
  r.values = {{"E0", e0},     {"E1", e1},     {"ref0", ref0},          {"ref1", ref1},
              {"err0", err0}, {"err1", err1}, {"err_reference", 0.289}};
  return r;
}

CheckResult check_harmonic() {
  CheckResult r;
  r.id = "harmonic-oscillator";
  const auto scales = PhysicalScales::normalized();
  const double omega = 1.0;
  const double u_eff = 0.5 * scales.mass * omega * omega;
  const double expected_ratio = std::sqrt(3.0 * pi * pi / 32.0);

  bool ratio_ok = true;
  double worst = 0.0;
  for (int n = 0; n <= 5; ++n) {
    const double exact = scales.hbar * omega * (n + 0.5);
    const double ratio = power_law_energy(u_eff, 2.0, n, scales) / exact;
    worst = std::max(worst, std::abs(ratio - expected_ratio));
    ratio_ok = ratio_ok && std::abs(ratio - expected_ratio) <= 1e-12;
  }
  const bool error_band_ok = std::abs((1.0 - expected_ratio) - 0.038) <= 0.001;

  const KsqProfile prof(HarmonicPotential{omega}, scales);
  bool roots_ok = true;
  double worst_root = 0.0, worst_wkb = 0.0;
  for (int n = 0; n <= 5; ++n) {
    const double closed = power_law_energy(u_eff, 2.0, n, scales);
    const double root = solve_quantization(prof, QuantizationRule::NewBases, n).E;
    const double wkb = solve_quantization(prof, QuantizationRule::WKB, n).E;
    const double exact = scales.hbar * omega * (n + 0.5);
    worst_root = std::max(worst_root, std::abs(root - closed) / closed);
    worst_wkb = std::max(worst_wkb, std::abs(wkb - exact) / exact);
  }
  roots_ok = worst_root <= 1e-9 && worst_wkb <= 1e-9;

  r.pass = ratio_ok && error_band_ok && roots_ok;
  r.detail = "ratio dev " + fmt(worst) + " (tol 1e-12); quantization-root dev " +
             fmt(worst_root) + ", WKB-rule dev " + fmt(worst_wkb) + " (tol 1e-9)";
  r.values = {{"expected_ratio", expected_ratio},
              {"max_ratio_deviation", worst},
              {"max_root_deviation", worst_root},
              {"max_wkb_deviation", worst_wkb}};
  return r;
}

CheckResult check_quarkonium() {
  CheckResult r;
  r.id = "quarkonium-ratio";
  const auto scales = PhysicalScales::normalized();
  const double expected = 2.0 / std::cbrt(9.0);
  bool ok = true;
  double worst = 0.0;
  for (int n = 0; n <= 5; ++n) {
    const double ratio =
        power_law_energy(1.0, 1.0, n, scales) / wkb_quarkonium_energy(1.0, n, scales);
    worst = std::max(worst, std::abs(ratio - expected));
    ok = ok && std::abs(ratio - expected) <= 1e-12;
  }
  const bool band = std::abs((1.0 - expected) - 0.038) <= 0.001;
  r.pass = ok && band;
  r.detail = "ratio dev " + fmt(worst) + " vs 2/9^(1/3)=" + fmt(expected) +
             "; discrepancy " + fmt(1.0 - expected) + " (3.8% +- 0.1pp)";
  r.values = {{"expected_ratio", expected}, {"max_deviation", worst}};
  return r;
}

CheckResult check_infinite_well() {
  CheckResult r;
  r.id = "infinite-well-limit";
  const auto scales = PhysicalScales::normalized();
  const KsqProfile prof(HardWallPotential{1.0}, scales);
  QuantizationOptions opts;
  opts.phase_shift = 0.0;

  bool ok = true;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double root = solve_quantization(prof, QuantizationRule::NewBases, n, opts).E;
    const double exact = infinite_well_energy(n, scales, 1.0);
    worst = std::max(worst, std::abs(root - exact) / exact);
  }
  ok = worst <= 1e-9;

  double worst_oracle = 0.0;
  const PotentialSpec wall = HardWallPotential{1.0};
  for (int n = 1; n <= 2; ++n) {
    const double eo =
        numerov_eigensolve(wall, scales, default_oracle_grid(wall, scales, n - 1), n - 1).E;
    const double exact = infinite_well_energy(n, scales, 1.0);
    worst_oracle = std::max(worst_oracle, std::abs(eo - exact) / exact);
  }
  const bool oracle_ok = worst_oracle <= 1e-6;

  r.pass = ok && oracle_ok;
  r.detail = "quantization dev " + fmt(worst) + " (tol 1e-9); oracle dev " +
             fmt(worst_oracle) + " (tol 1e-6)";
  r.values = {{"max_root_deviation", worst}, {"max_oracle_deviation", worst_oracle}};
  return r;
}

CheckResult check_bases() {
  CheckResult r;
  r.id = "basis-correctness";
  const auto scales = PhysicalScales::normalized();
  std::ostringstream why;
  bool ok = true;

  // constant-k closed forms
  {
    std::mt19937 gen(20240915u);
    std::uniform_real_distribution<double> kd(0.3, 3.0), xd(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double k = kd(gen), x = xd(gen);
      const KsqProfile prof = constant_ksq_profile(k * k);
      const auto b = eval_basis(BasisKind::new_bases(), prof, 0.0, x);
      worst = std::max({worst, std::abs(b.C - std::cos(k * x)),
                        std::abs(b.S - std::sin(k * x) / k)});
    }
    ok = ok && worst <= 1e-12;
    why << "const-k dev " << fmt(worst);
  }

  // initial conditions via finite differences
  {
    const KsqProfile prof(PowerLawPotential{1.0, 2.0}, scales);
    const auto b0 = eval_basis(BasisKind::new_bases(), prof, 1.0, 0.0);
    const auto d0 = basis_derivative(BasisKind::new_bases(), prof, 1.0, 0.0);
    const double dev = std::max({std::abs(b0.C - 1.0), std::abs(b0.S), std::abs(d0.dC),
                                 std::abs(d0.dS - 1.0)});
    ok = ok && dev <= 1e-8;
    why << "; IC dev " << fmt(dev);
  }

  // parity identities
  {
    std::mt19937 gen(77u);
    std::uniform_real_distribution<double> xd(0.01, 2.5);
    const KsqProfile prof(PowerLawPotential{1.0, 2.0}, scales);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x = xd(gen);
      const auto p = eval_basis(BasisKind::new_bases(), prof, 2.0, x);
      const auto m = eval_basis(BasisKind::new_bases(), prof, 2.0, -x);
      worst = std::max({worst, std::abs(p.C - m.C), std::abs(p.S + m.S)});
    }
    ok = ok && worst <= 1e-10;
    why << "; parity dev " << fmt(worst);
  }

  // continuity across the turning point
  {
    const KsqProfile prof(PowerLawPotential{1.0, 2.0}, scales);
    const double xi = prof.turning_point(1.0).xi;
    double max_jump = 0.0;
    auto prev = eval_basis(BasisKind::new_bases(), prof, 1.0, xi - 50e-6);
    for (int i = 1; i <= 100; ++i) {
      const auto cur = eval_basis(BasisKind::new_bases(), prof, 1.0, xi - 50e-6 + i * 1e-6);
      max_jump = std::max({max_jump, std::abs(cur.C - prev.C), std::abs(cur.S - prev.S)});
      prev = cur;
    }
    ok = ok && max_jump <= 1e-6;
    why << "; max jump " << fmt(max_jump);
  }

  // WKB divergence at the turning point
  {
    const KsqProfile gentle(PowerLawPotential{1e-6, 1.0}, scales);
    const auto at_tp = eval_basis(BasisKind::wkb(), gentle, 1e-6, 1.0);
    const auto near_tp = eval_basis(BasisKind::wkb(), gentle, 1e-6, 1.0 - 1e-8);
    const bool diverges = !at_tp.finite && std::abs(near_tp.C) > 1e3;
    ok = ok && diverges;
    why << "; WKB at tp finite=" << (at_tp.finite ? "true" : "false") << " |C|=" << fmt(std::abs(near_tp.C));
  }

  r.pass = ok;
  r.detail = why.str();
  return r;
}

CheckResult check_dtmm() {
  CheckResult r;
  r.id = "dtmm-algebra";
  std::ostringstream why;
  bool ok = true;

  const ComplexCoefficient f{[](double x) { return 1.5 + 0.25 * x * x; },
                             [](double x) { return 0.5 * std::sin(x); }};

  const auto q1 = transfer_Q(f, 0.0, 1.3);
  const auto q2 = transfer_Q(f, 1.3, 2.1);
  {
    const double det_dev = std::max(std::abs(q1.Q.determinant() - 1.0),
                                    std::abs(compose(q1, q2).Q.determinant() - 1.0));
    const double self_dev =
        (transfer_Q(f, 0.7, 0.7).Q - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
    const double inv_dev =
        (compose(q1, invert(q1)).Q - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
    ok = ok && det_dev <= 1e-10 && self_dev <= 1e-12 && inv_dev <= 1e-10;
    why << "det dev " << fmt(det_dev) << "; inv dev " << fmt(inv_dev);
  }
  {
    // decomposition on a constant coefficient, where composition is exact
    const ComplexCoefficient fc = ComplexCoefficient::real([](double) { return 2.0; });
    const auto a = transfer_Q(fc, 0.0, 0.8);
    const auto b = transfer_Q(fc, 0.8, 1.6);
    const double dev = (compose(a, b).Q - transfer_Q(fc, 0.0, 1.6).Q).cwiseAbs().maxCoeff();
    ok = ok && dev <= 1e-10;
    why << "; decomp dev " << fmt(dev);
  }
  {
    // real-coefficient reduction onto the algebraic basis pair
    const auto scales = PhysicalScales::normalized();
    const KsqProfile prof(PowerLawPotential{1.0, 2.0}, scales);
    const double E = 1.0;
    const ComplexCoefficient freal =
        ComplexCoefficient::real([&](double x) { return prof.ksq(E, x); });
    double worst = 0.0;
    for (double x : {0.3, 0.9, 1.4}) {
      const auto q = transfer_Q(freal, 0.0, x);
      const auto b = eval_basis(BasisKind::new_bases(), prof, E, x);
      const auto s1 = propagate(q, {1.0, 0.0, 0.0, 0.0});
      const auto s2 = propagate(q, {0.0, 0.0, 1.0, 0.0});
      worst = std::max({worst, std::abs(s1.u - b.C), std::abs(s2.u - b.S)});
    }
    ok = ok && worst <= 1e-10;
    why << "; reduction dev " << fmt(worst);
  }
  {
    // piecewise refinement against the ODE oracle on the Airy coefficient
    const auto scales = PhysicalScales::normalized();
    const KsqProfile airy(TabulatedPotential{{0.0, 2.0}, {0.0, 2.0}}, scales);
    Grid fine{0.0, 2.0, 100001};
    const double u_ref = integrate_ivp(airy, 0.0, 1.0, 0.0, fine).back();
    const ComplexCoefficient fa = ComplexCoefficient::real([](double x) { return -x; });
    std::vector<double> errs;
    for (int n : {256, 512, 1024, 2048})
      errs.push_back(std::abs(piecewise_propagate(fa, 0.0, 2.0, n).Q(0, 0) - u_ref));
    double min_ratio = 1e300;
    for (std::size_t i = 0; i + 1 < errs.size(); ++i)
      min_ratio = std::min(min_ratio, errs[i] / errs[i + 1]);
    ok = ok && min_ratio >= 3.5 && errs.back() <= 1e-6;
    why << "; refinement ratios >= " << fmt(min_ratio) << ", final err " << fmt(errs.back());
  }

  r.pass = ok;
  r.detail = why.str();
  return r;
}

CheckResult check_bloch() {
  CheckResult r;
  r.id = "bloch-homogenization";
  std::mt19937 gen(424242u);
  std::uniform_real_distribution<double> k1d(0.7, 1.5), ratio_d(1.5, 3.0), len_d(0.5, 1.5);
  bool ordering_ok = true;
  double worst_formula_dev = 0.0;
  const double scale = 1e-2;

  for (int trial = 0; trial < 20; ++trial) {
    const double k1 = k1d(gen), k2 = ratio_d(gen) * k1;
    const double a = len_d(gen), b = len_d(gen);
    const double L = a + b;
    KsqProfile cell(PiecewiseConstantPotential{{0.0, a, L}, {-k1 * k1, -k2 * k2}},
                    PhysicalScales::normalized());
    PeriodicProfile profile(L, cell, 0.0);

    const auto [err_new, err_wkb] = homogenization_error(profile, scale, 1024);
    ordering_ok = ordering_ok && err_new < err_wkb;

    // independent two-layer trace relation at the scaled drive
    const double s1 = scale * k1, s2 = scale * k2;
    const double rhs = std::cos(s1 * a) * std::cos(s2 * b) -
                       (s1 * s1 + s2 * s2) / (2.0 * s1 * s2) * std::sin(s1 * a) *
                           std::sin(s2 * b);
    const double kappa_formula = std::acos(rhs) / L;
    const double half_trace = 0.5 * monodromy(profile, 1024, scale * scale).trace();
    const double kappa_mono = std::acos(std::clamp(half_trace, -1.0, 1.0)) / L;
    worst_formula_dev = std::max(worst_formula_dev, std::abs(kappa_mono - kappa_formula));
  }

  r.pass = ordering_ok && worst_formula_dev <= 1e-8;
  r.detail = std::string("err_new < err_wkb for all 20 cells: ") +
             (ordering_ok ? "yes" : "no") + "; max |kappa_exact - trace formula| = " +
             fmt(worst_formula_dev) + " (tol 1e-8)";
  r.values = {{"ordering_ok", ordering_ok}, {"max_formula_deviation", worst_formula_dev}};
  return r;
}

CheckResult check_wavefunction_comparison() {
  CheckResult r;
  r.id = "wavefunction-comparison";
  const auto scales = PhysicalScales::normalized();
  const PotentialSpec well = SingularPotential{1.0, 0.5};
  const double e0 = numerov_energy_converged(well, scales, 0, 1.2e-3, 3);

  const auto traces = wavefunction_traces(well, scales, e0, 0.8, 400);
  const double rms_new = rms_after_projection(traces.u_new_bases, traces.u_oracle);
  const double rms_simple = rms_after_projection(traces.u_simple_wkb, traces.u_oracle);
  const double rms_wkb = rms_after_projection(traces.u_improved_wkb, traces.u_oracle);

  r.pass = rms_new < rms_simple && rms_new < rms_wkb;
  r.detail = "RMS vs oracle at E0=" + fmt(e0) + ": new=" + fmt(rms_new) +
             " simple-wkb=" + fmt(rms_simple) + " improved-wkb=" + fmt(rms_wkb);
  r.values = {{"E0", e0},
              {"rms_new_bases", rms_new},
              {"rms_simple_wkb", rms_simple},
              {"rms_improved_wkb", rms_wkb}};
  return r;
}

}  // namespace

std::vector<CheckResult> run_validation_suite() {
  return {check_singular_closed_form(), check_singular_oracle(), check_harmonic(),
          check_quarkonium(),           check_infinite_well(),   check_bases(),
          check_dtmm(),                 check_bloch(),           check_wavefunction_comparison()};
}

WavefunctionTraces wavefunction_traces(const PotentialSpec& potential,
                                       const PhysicalScales& scales, double energy,
                                       double window_fraction, int n_samples) {
  if (n_samples < 8) throw PreconditionError("wavefunction_traces: n_samples too small");
  const KsqProfile prof(potential, scales);
  WavefunctionTraces out;
  out.energy = energy;
  out.xi = prof.turning_point(energy).xi;
  const double w = window_fraction * out.xi;
  const bool singular = std::holds_alternative<SingularPotential>(potential);

  // symmetric staggered sample grid; never touches x = 0
  const int half = n_samples / 2;
  const double hs = w / half;
  std::vector<double> xs_half(half);
  for (int j = 0; j < half; ++j) xs_half[j] = (j + 0.5) * hs;

  // oracle half trace: short series around the origin for singular wells,
  // then fine fixed-step integration outward
  std::vector<double> oracle_half(half);
  const double c = scales.two_m_over_hbar2();
  double x_start = 0.0, u_start = 1.0, du_start = 0.0;
  std::function<double(double)> series;
  if (singular) {
    const auto& sp = std::get<SingularPotential>(potential);
    const double a_coef = -c * sp.U / ((1.0 - sp.beta) * (2.0 - sp.beta));
    const double b_coef = -c * energy / 2.0;
    series = [=](double x) {
      return 1.0 + a_coef * std::pow(x, 2.0 - sp.beta) + b_coef * x * x;
    };
    x_start = std::max(0.01 * out.xi, 1e-6);
    u_start = series(x_start);
    du_start = a_coef * (2.0 - sp.beta) * std::pow(x_start, 1.0 - sp.beta) +
               2.0 * b_coef * x_start;
  }
  Grid fine{x_start, w, 80001};
  const std::vector<double> u_fine = integrate_ivp(prof, energy, u_start, du_start, fine);
  auto oracle_at = [&](double x) {
    if (singular && x < x_start) return series(x);
    const double t = (x - x_start) / fine.h();
    const int i = std::clamp(static_cast<int>(t), 0, fine.n_points - 2);
    const double frac = t - i;
    return u_fine[i] * (1.0 - frac) + u_fine[i + 1] * frac;
  };
  for (int j = 0; j < half; ++j) oracle_half[j] = oracle_at(xs_half[j]);

  out.x.resize(2 * half);
  out.u_oracle.resize(2 * half);
  out.u_new_bases.resize(2 * half);
  out.u_simple_wkb.resize(2 * half);
  out.u_improved_wkb.resize(2 * half);
  out.u_airy.resize(2 * half);

  const BasisKind airy = BasisKind::airy_improved(out.xi);
  for (int j = 0; j < half; ++j) {
    const double x = xs_half[j];
    const auto nb = eval_basis(BasisKind::new_bases(), prof, energy, x);
    const auto sw = eval_basis(BasisKind::simple_wkb(), prof, energy, x);
    const auto wk = eval_basis(BasisKind::wkb(), prof, energy, x);
    const auto ai = eval_basis(airy, prof, energy, x);
    // even state: all traces are even in x
    for (int side = 0; side < 2; ++side) {
      const int idx = side == 0 ? half - 1 - j : half + j;
      out.x[idx] = side == 0 ? -x : x;
      out.u_oracle[idx] = oracle_half[j];
      out.u_new_bases[idx] = nb.C;
      out.u_simple_wkb[idx] = sw.C;
      out.u_improved_wkb[idx] = wk.C;
      out.u_airy[idx] = ai.C;
    }
  }
  return out;
}

double rms_after_projection(const std::vector<double>& model,
                            const std::vector<double>& reference) {
  if (model.size() != reference.size() || model.empty())
    throw PreconditionError("rms_after_projection: size mismatch");
  double mm = 0.0, mr = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    mm += model[i] * model[i];
    mr += model[i] * reference[i];
  }
  const double s = mm > 0.0 ? mr / mm : 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double d = s * model[i] - reference[i];
    acc += d * d;
  }
  return std::sqrt(acc / model.size());
}

}  // namespace wavebasis
