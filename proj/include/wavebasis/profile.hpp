#pragma once

#include <utility>

#include "wavebasis/potential.hpp"
#include "wavebasis/scales.hpp"

namespace wavebasis {

/// Dielectric stack description: k^2(x) = (omega/c)^2 (epsilon(x) - N).
/// The drive parameter of a KsqProfile built from this is the angular
/// frequency omega; `omega` below is only the default drive.
struct OpticalSpec {
  double omega = 1.0;
  double c = 1.0;
  PotentialSpec epsilon = PiecewiseConstantPotential{};
  double N = 0.0;
};

/// Pair of classical turning points at +-xi of an even profile.
struct TurningPoints {
  double xi = 0.0;
};

/// The wavenumber function k^2(x; E) of a potential (or permittivity)
/// profile, together with its turning points and the quadratures of k^2 and
/// k. Immutable after construction; all members are pure.
class KsqProfile {
 public:
  explicit KsqProfile(PotentialSpec spec, PhysicalScales scales = PhysicalScales::normalized());
  static KsqProfile optical(OpticalSpec spec);

  /// k^2(x) at energy (or drive frequency) E. May be negative in the
  /// classically forbidden region.
  double ksq(double E, double x) const;

  /// V(x) for quantum sources, epsilon(x) for optical ones.
  double potential(double x) const;

  std::pair<double, double> domain() const;
  bool even() const;
  bool optical_source() const { return optical_; }
  const PotentialSpec& spec() const { return spec_; }
  const PhysicalScales& scales() const { return scales_; }

  /// Outermost positive turning point. Closed form for power-law variants,
  /// bracketing + bisection (1e-12 relative) otherwise.
  TurningPoints turning_point(double E) const;

  /// Integral of k^2 over [a, b], orientation-aware (a > b flips the sign).
  /// Closed form for every built-in variant; the singular variant uses the
  /// analytic antiderivative |x|^(1-beta)/(1-beta) on each side of 0.
  double integrate_ksq(double E, double a, double b) const;

  /// Pure-quadrature version of integrate_ksq; used to cross-check the
  /// closed forms.
  double integrate_ksq_numeric(double E, double a, double b, double tol = 1e-10) const;

  /// Integral of k = sqrt(k^2) over [a, b]; tolerates sqrt-type endpoint
  /// zeros (turning points at the ends). k^2 < 0 in the interior throws
  /// ForbiddenRegionError.
  double integrate_k(double E, double a, double b, double tol = 1e-10) const;

  /// Integral of sqrt(|k^2|); no sign restriction. Used for phase distances
  /// in the forbidden zone.
  double integrate_k_magnitude(double E, double a, double b, double tol = 1e-10) const;

 private:
  KsqProfile() = default;

  double prefactor(double E) const;  // 2m/hbar^2, or (omega/c)^2
  double offset(double E) const;     // E, or -N
  double shape_sign() const;         // -1 for quantum (E - V), +1 for optical
  double shape_integral(double a, double b) const;  // exact integral of V or epsilon
  void check_domain(double a, double b) const;

  PotentialSpec spec_;
  PhysicalScales scales_;
  bool optical_ = false;
  double optical_c_ = 1.0;
  double optical_N_ = 0.0;
};

}  // namespace wavebasis
