#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wavebasis/potential.hpp"
#include "wavebasis/scales.hpp"

namespace wavebasis {

/// One quantitative validation check with its measured values.
struct CheckResult {
  std::string id;
  bool pass = false;
  std::string detail;
  nlohmann::json values;
};

/// Runs the full built-in validation suite (closed-form spectra, oracle
/// reproduction, basis identities, transfer-matrix algebra, Bloch
/// homogenization, wavefunction comparison). Every tolerance is pinned in
/// the implementation.
std::vector<CheckResult> run_validation_suite();

/// Sampled wavefunction comparison for an even bound state: the oracle trace
/// against each basis family, all at the same energy and initial conditions
/// u(0) = 1, u'(0) = 0.
struct WavefunctionTraces {
  std::vector<double> x;
  std::vector<double> u_oracle;
  std::vector<double> u_new_bases;
  std::vector<double> u_simple_wkb;
  std::vector<double> u_improved_wkb;  // the 1/sqrt(k)-prefactor pair
  std::vector<double> u_airy;          // Ai-based pair anchored at +xi
  double xi = 0.0;
  double energy = 0.0;
};

/// Builds traces on a symmetric staggered grid over
/// [-window_fraction*xi, window_fraction*xi] (never sampling x = 0).
WavefunctionTraces wavefunction_traces(const PotentialSpec& potential,
                                       const PhysicalScales& scales, double energy,
                                       double window_fraction, int n_samples);

/// RMS of (s*model - reference) with s the least-squares projection scale;
/// measures shape deviation independent of normalization conventions.
double rms_after_projection(const std::vector<double>& model,
                            const std::vector<double>& reference);

}  // namespace wavebasis
