#pragma once

#include <optional>
#include <vector>

#include "wavebasis/profile.hpp"

namespace wavebasis {

/// Quantization conditions: the accumulated-quantity form
/// sqrt(2 xi Int k^2) = pi (n + shift) of the algebraic bases, or the
/// classical phase-integral form Int k = pi (n + shift).
enum class QuantizationRule { NewBases, WKB };

enum class SpectrumMethod { closed_form, quantization_root, oracle };

struct EnergyLevel {
  int n = 0;
  double E = 0.0;
  SpectrumMethod method = SpectrumMethod::closed_form;
};

using EnergySpectrum = std::vector<EnergyLevel>;

/// E_n of V = U|x|^alpha from the algebraic-basis quantization:
/// [pi^2 hbar^2/(8m) (1 + 1/alpha) U^(2/alpha)]^(alpha/(alpha+2))
///   * (n + 1/2)^(2 alpha/(alpha+2)).
double power_law_energy(double U, double alpha, int n, const PhysicalScales& scales);

/// WKB spectrum of the linear well V = U|x|:
/// (9 pi^2 hbar^2 U^2 / 32 m)^(1/3) (n + 1/2)^(2/3).
double wkb_quarkonium_energy(double U, int n, const PhysicalScales& scales);

/// Box levels pi^2 hbar^2 n^2 / (8 m half_width^2), n >= 1.
double infinite_well_energy(int n, const PhysicalScales& scales, double half_width = 1.0);

/// E_n of the singular well V = -U|x|^-beta (0 < beta < 1):
/// -[8 beta U^(2/beta) m / (pi^2 hbar^2 (1-beta))]^(beta/(2-beta))
///   * (n + 1/2)^(-2 beta/(2-beta)).
double singular_energy(double U, double beta, int n, const PhysicalScales& scales);

struct QuantizationOptions {
  /// pi-phase shift in the quantization target; 0 or 1/2. Defaults to 0 for
  /// hard walls and 1/2 for soft potentials.
  std::optional<double> phase_shift;
  double rel_tol = 1e-10;
  double quad_tol = 1e-12;
};

/// Root of the chosen quantization condition for an even confining profile
/// (or a singular well, searched in E < 0). Bracket by geometric expansion
/// from a closed-form or virial-style guess, then bisection + secant polish.
EnergyLevel solve_quantization(const KsqProfile& profile, QuantizationRule rule, int n,
                               const QuantizationOptions& opts = {});

struct SpectrumComparison {
  struct Row {
    int n = 0;
    double E_a = 0.0;
    double E_b = 0.0;
    double rel_err = 0.0;  // |E_a - E_b| / |E_b|, b is the reference
  };
  std::vector<Row> rows;
  double max_rel_err = 0.0;
};

/// Per-level relative errors of spectrum `a` against reference `b` over
/// their common n range.
SpectrumComparison compare_spectra(const EnergySpectrum& a, const EnergySpectrum& b);

}  // namespace wavebasis
