#include "wavebasis/bloch.hpp"

#include <cmath>

#include "wavebasis/errors.hpp"
#include "wavebasis/special.hpp"

namespace wavebasis {

namespace {

constexpr double pi = 3.14159265358979323846;

}

void PeriodicProfile::validate() const {
  if (!(L > 0.0)) throw PreconditionError("PeriodicProfile: period L must be > 0");
  const auto [lo, hi] = cell.domain();
  if (lo > 0.0 || hi < L)
    throw PreconditionError("PeriodicProfile: cell profile must cover [0, L]");
}

DispersionPoint kappa_new(const PeriodicProfile& profile) {
  const double mean = profile.mean_ksq();
  DispersionPoint out;
  out.drive = profile.drive;
  if (mean >= 0.0)
    out.kappa_re = std::sqrt(mean);
  else
    out.kappa_im = std::sqrt(-mean);
  return out;
}

double kappa_wkb(const PeriodicProfile& profile) {
  return profile.cell.integrate_k(profile.drive, 0.0, profile.L, 1e-12) / profile.L;
}

Eigen::Matrix2d monodromy(const PeriodicProfile& profile, int n_segments, double ksq_scale) {
  if (n_segments < 1) throw PreconditionError("monodromy: n_segments must be >= 1");
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  // single-interval (u, u') propagator per segment: [[cos_sqrt(w), len sinc_sqrt(w)],
  // [-I1 sinc_sqrt(w), cos_sqrt(w)]] with I1 the exact segment integral of k^2
  for (int i = 0; i < n_segments; ++i) {
    const double lo = profile.L * static_cast<double>(i) / n_segments;
    const double hi = profile.L * static_cast<double>(i + 1) / n_segments;
    const double len = hi - lo;
    const double i1 = ksq_scale * profile.cell.integrate_ksq(profile.drive, lo, hi);
    const double w = len * i1;
    Eigen::Matrix2d seg;
    seg << cos_sqrt(w), len * sinc_sqrt(w), -i1 * sinc_sqrt(w), cos_sqrt(w);
    m = seg * m;
  }
  return m;
}

DispersionPoint kappa_exact(const PeriodicProfile& profile, int n_segments) {
  const Eigen::Matrix2d m = monodromy(profile, n_segments);
  const double half_trace = 0.5 * m.trace();
  DispersionPoint out;
  out.drive = profile.drive;
  if (std::abs(half_trace) <= 1.0) {
    out.kappa_re = std::acos(half_trace) / profile.L;
  } else {
    out.kappa_im = std::acosh(std::abs(half_trace)) / profile.L;
    out.kappa_re = half_trace < 0.0 ? pi / profile.L : 0.0;
  }
  return out;
}

std::pair<double, double> homogenization_error(const PeriodicProfile& profile,
                                               double drive_scale, int n_segments) {
  if (!(drive_scale > 0.0))
    throw PreconditionError("homogenization_error: drive_scale must be > 0");
  const double s2 = drive_scale * drive_scale;

  const Eigen::Matrix2d m = monodromy(profile, n_segments, s2);
  const double half_trace = 0.5 * m.trace();
  if (std::abs(half_trace) > 1.0)
    throw ForbiddenRegionError("homogenization_error: scaled cell sits in a band gap");
  const double k_exact = std::acos(half_trace) / profile.L;

  const double k_new = std::sqrt(std::max(profile.mean_ksq(), 0.0)) * drive_scale;
  const double k_wkb = kappa_wkb(profile) * drive_scale;
  return {std::abs(k_new - k_exact) / k_exact, std::abs(k_wkb - k_exact) / k_exact};
}

}  // namespace wavebasis
