#pragma once

#include "wavebasis/errors.hpp"

namespace wavebasis {

/// Particle mass and reduced Planck constant. The default is the normalized
/// system hbar^2/(2m) = 1, in which k^2(x) = E - V(x).
struct PhysicalScales {
  double mass = 0.5;
  double hbar = 1.0;

  static PhysicalScales normalized() { return {0.5, 1.0}; }

  void validate() const {
    if (!(mass > 0.0)) throw PreconditionError("PhysicalScales: mass must be > 0");
    if (!(hbar > 0.0)) throw PreconditionError("PhysicalScales: hbar must be > 0");
  }

  double two_m_over_hbar2() const { return 2.0 * mass / (hbar * hbar); }
  double hbar2_over_2m() const { return hbar * hbar / (2.0 * mass); }
};

}  // namespace wavebasis
