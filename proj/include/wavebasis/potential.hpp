#pragma once

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wavebasis/scales.hpp"

namespace wavebasis {

/// V(x) = U |x|^alpha, U > 0, alpha > 0.
struct PowerLawPotential {
  double U = 1.0;
  double alpha = 2.0;
};

/// V(x) = -U |x|^-beta with 0 < beta < 1 (integrable attractive singularity).
struct SingularPotential {
  double U = 1.0;
  double beta = 0.5;
};

/// V(x) = m Omega^2 x^2 / 2; equivalent to a power law with alpha = 2,
/// U = m Omega^2 / 2 once scales are known.
struct HarmonicPotential {
  double omega = 1.0;
};

/// Piecewise constant: values[i] holds on [breakpoints[i], breakpoints[i+1]).
/// Domain is [breakpoints.front(), breakpoints.back()].
struct PiecewiseConstantPotential {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

/// Linear interpolation of (x, v) samples; domain is [x.front(), x.back()].
struct TabulatedPotential {
  std::vector<double> x;
  std::vector<double> v;
};

/// V = 0 on [-half_width, half_width], infinite walls at the ends.
struct HardWallPotential {
  double half_width = 1.0;
};

using PotentialSpec = std::variant<PowerLawPotential, SingularPotential, HarmonicPotential,
                                   PiecewiseConstantPotential, TabulatedPotential,
                                   HardWallPotential>;

/// Checks the invariants of a spec (positivity, ordering, beta < 1, ...).
/// Throws PreconditionError on violation.
void validate(const PotentialSpec& spec);

/// V(x) for the given scales. Harmonic needs the mass; every other variant
/// ignores `scales`. Throws DomainError / SingularPointError as appropriate.
double potential_value(const PotentialSpec& spec, const PhysicalScales& scales, double x);

/// Domain of definition; unbounded variants report +-infinity.
std::pair<double, double> potential_domain(const PotentialSpec& spec);

/// Short variant name, e.g. "power_law", as used in the JSON interface.
std::string potential_type_name(const PotentialSpec& spec);

/// A potential plus the scales it is meant to be used with.
struct PotentialDocument {
  PotentialSpec potential;
  PhysicalScales scales = PhysicalScales::normalized();
};

/// Parses {"type": ..., <variant fields>, "scales": {"mass":..,"hbar":..}?}.
/// Unknown fields are rejected with ConfigError.
PotentialDocument potential_from_json(const nlohmann::json& doc);

/// File-based convenience wrapper around potential_from_json.
PotentialDocument load_potential_file(const std::string& path);

}  // namespace wavebasis
