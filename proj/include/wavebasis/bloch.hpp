#pragma once

#include <utility>

#include <Eigen/Dense>

#include "wavebasis/profile.hpp"

namespace wavebasis {

/// One period [0, L] of a periodic medium: a k^2 profile evaluated at a
/// fixed drive (energy or frequency).
struct PeriodicProfile {
  double L = 1.0;
  KsqProfile cell;
  double drive = 0.0;

  PeriodicProfile(double period, KsqProfile cell_profile, double drive_value)
      : L(period), cell(std::move(cell_profile)), drive(drive_value) {
    validate();
  }

  void validate() const;
  double ksq_at(double x) const { return cell.ksq(drive, x); }
  double mean_ksq() const { return cell.integrate_ksq(drive, 0.0, L) / L; }
};

/// Bloch wavenumber sample; kappa_im is nonzero inside band gaps.
struct DispersionPoint {
  double drive = 0.0;
  double kappa_re = 0.0;
  double kappa_im = 0.0;
};

/// Algebraic-basis dispersion kappa^2 = cell average of k^2. A negative
/// average yields a purely imaginary kappa (evanescent medium).
DispersionPoint kappa_new(const PeriodicProfile& profile);

/// Phase-average dispersion kappa = (1/L) Int k. Requires k^2 >= 0 over the
/// cell (ForbiddenRegionError otherwise).
double kappa_wkb(const PeriodicProfile& profile);

/// One-period monodromy of the real (u, u') system, built from n_segments
/// single-interval propagators with exact per-segment integrals of k^2.
Eigen::Matrix2d monodromy(const PeriodicProfile& profile, int n_segments,
                          double ksq_scale = 1.0);

/// Exact Bloch dispersion from the monodromy trace: kappa = acos(tr/2)/L in
/// pass bands, kappa_im = acosh(|tr|/2)/L inside gaps (kappa_re then sits at
/// 0 or the zone edge pi/L). Reported in the first Brillouin zone.
DispersionPoint kappa_exact(const PeriodicProfile& profile, int n_segments = 1024);

/// Relative errors of the two approximate dispersions against the exact one
/// with the cell's k^2 scaled by drive_scale^2 (the long-wavelength limit).
std::pair<double, double> homogenization_error(const PeriodicProfile& profile,
                                               double drive_scale, int n_segments = 1024);

}  // namespace wavebasis
