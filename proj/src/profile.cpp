#include "wavebasis/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "wavebasis/errors.hpp"
#include "wavebasis/quadrature.hpp"

namespace wavebasis {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Antiderivative of |t|^p, valid through 0 for p > -1.
double abs_power_antiderivative(double t, double p) {
  if (t == 0.0) return 0.0;
  const double s = t > 0.0 ? 1.0 : -1.0;
  return s * std::pow(std::abs(t), p + 1.0) / (p + 1.0);
}

// Interior split points of [a, b]: the origin for |x|^p shapes, the
// breakpoints for piecewise shapes. Keeps quadrature pieces smooth.
std::vector<double> split_points(const PotentialSpec& spec, double a, double b) {
  std::vector<double> pts{a};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerLawPotential> ||
                      std::is_same_v<T, SingularPotential> ||
                      std::is_same_v<T, HarmonicPotential>) {
          if (a < 0.0 && b > 0.0) pts.push_back(0.0);
        } else if constexpr (std::is_same_v<T, PiecewiseConstantPotential>) {
          for (double bp : p.breakpoints)
            if (bp > a && bp < b) pts.push_back(bp);
        } else if constexpr (std::is_same_v<T, TabulatedPotential>) {
          for (double x : p.x)
            if (x > a && x < b) pts.push_back(x);
        }
      },
      spec);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

KsqProfile::KsqProfile(PotentialSpec spec, PhysicalScales scales)
    : spec_(std::move(spec)), scales_(scales) {
  scales_.validate();
  validate(spec_);
}

KsqProfile KsqProfile::optical(OpticalSpec spec) {
  if (!(spec.c > 0.0)) throw PreconditionError("optical: c must be > 0");
  if (!(spec.omega > 0.0)) throw PreconditionError("optical: omega must be > 0");
  validate(spec.epsilon);
  KsqProfile p;
  p.spec_ = std::move(spec.epsilon);
  p.scales_ = PhysicalScales::normalized();
  p.optical_ = true;
  p.optical_c_ = spec.c;
  p.optical_N_ = spec.N;
  return p;
}

double KsqProfile::prefactor(double E) const {
  if (optical_) {
    const double r = E / optical_c_;
    return r * r;
  }
  return scales_.two_m_over_hbar2();
}

double KsqProfile::offset(double E) const { return optical_ ? -optical_N_ : E; }

double KsqProfile::shape_sign() const { return optical_ ? 1.0 : -1.0; }

double KsqProfile::ksq(double E, double x) const {
  const double v = potential_value(spec_, scales_, x);
  return prefactor(E) * (offset(E) + shape_sign() * v);
}

double KsqProfile::potential(double x) const { return potential_value(spec_, scales_, x); }

std::pair<double, double> KsqProfile::domain() const { return potential_domain(spec_); }

bool KsqProfile::even() const {
  return std::visit(
      [](const auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PiecewiseConstantPotential>) {
          const auto& bp = p.breakpoints;
          const std::size_t n = bp.size();
          for (std::size_t i = 0; i < n; ++i)
            if (std::abs(bp[i] + bp[n - 1 - i]) > 1e-12 * (std::abs(bp.back()) + 1.0))
              return false;
          const std::size_t m = p.values.size();
          for (std::size_t i = 0; i < m; ++i)
            if (p.values[i] != p.values[m - 1 - i]) return false;
          return true;
        } else if constexpr (std::is_same_v<T, TabulatedPotential>) {
          const std::size_t n = p.x.size();
          for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(p.x[i] + p.x[n - 1 - i]) > 1e-12 * (std::abs(p.x.back()) + 1.0))
              return false;
            if (p.v[i] != p.v[n - 1 - i]) return false;
          }
          return true;
        } else {
          return true;  // |x|-based variants and the hard wall
        }
      },
      spec_);
}

void KsqProfile::check_domain(double a, double b) const {
  const auto [lo, hi] = domain();
  if (a < lo || b > hi) throw DomainError("integration interval outside profile domain");
}

TurningPoints KsqProfile::turning_point(double E) const {
  if (!optical_) {
    if (const auto* p = std::get_if<PowerLawPotential>(&spec_)) {
      if (!(E > 0.0)) throw PreconditionError("power-law turning point requires E > 0");
      return {std::pow(E / p->U, 1.0 / p->alpha)};
    }
    if (const auto* p = std::get_if<HarmonicPotential>(&spec_)) {
      if (!(E > 0.0)) throw PreconditionError("harmonic turning point requires E > 0");
      const double u_eff = 0.5 * scales_.mass * p->omega * p->omega;
      return {std::sqrt(E / u_eff)};
    }
    if (const auto* p = std::get_if<SingularPotential>(&spec_)) {
      if (!(E < 0.0)) throw PreconditionError("singular-well turning point requires E < 0");
      return {std::pow(p->U / (-E), 1.0 / p->beta)};
    }
    if (const auto* p = std::get_if<HardWallPotential>(&spec_)) {
      if (!(E > 0.0)) throw PreconditionError("hard-wall turning point requires E > 0");
      return {p->half_width};
    }
  }

  // Generic profiles: outermost sign change of k^2 on x > 0, then bisection.
  const auto [lo, hi] = domain();
  const double xmax = hi;
  if (!std::isfinite(xmax))
    throw NoTurningPointError("unbounded generic profile: cannot scan for turning point");
  const int n_scan = 512;
  const double scan_lo = std::max(lo, xmax * 1e-12);
  double x_in = 0.0, x_out = 0.0;
  bool found = false;
  double prev_x = scan_lo;
  double prev_k = ksq(E, prev_x);
  for (int i = 1; i <= n_scan; ++i) {
    const double x = scan_lo + (xmax - scan_lo) * static_cast<double>(i) / n_scan;
    const double k = ksq(E, x);
    if (prev_k > 0.0 && k <= 0.0) {
      x_in = prev_x;
      x_out = x;
      found = true;  // keep the outermost crossing
    }
    prev_x = x;
    prev_k = k;
  }
  if (!found) throw NoTurningPointError("k^2 has no sign change on (0, x_max]");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (x_in + x_out);
    if (ksq(E, mid) > 0.0)
      x_in = mid;
    else
      x_out = mid;
    if (x_out - x_in <= 1e-12 * std::max(1.0, std::abs(x_out))) break;
  }
  return {0.5 * (x_in + x_out)};
}

double KsqProfile::shape_integral(double a, double b) const {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerLawPotential>) {
          return p.U * (abs_power_antiderivative(b, p.alpha) -
                        abs_power_antiderivative(a, p.alpha));
        } else if constexpr (std::is_same_v<T, SingularPotential>) {
          return -p.U * (abs_power_antiderivative(b, -p.beta) -
                         abs_power_antiderivative(a, -p.beta));
        } else if constexpr (std::is_same_v<T, HarmonicPotential>) {
          const double u_eff = 0.5 * scales_.mass * p.omega * p.omega;
          return u_eff * (b * b * b - a * a * a) / 3.0;
        } else if constexpr (std::is_same_v<T, PiecewiseConstantPotential>) {
          double sum = 0.0;
          for (std::size_t i = 0; i + 1 < p.breakpoints.size(); ++i) {
            const double lo = std::max(a, p.breakpoints[i]);
            const double hi = std::min(b, p.breakpoints[i + 1]);
            if (hi > lo) sum += p.values[i] * (hi - lo);
          }
          return sum;
        } else if constexpr (std::is_same_v<T, TabulatedPotential>) {
          // exact integral of the linear interpolant over [a, b]
          double sum = 0.0;
          auto value_at = [&](double x) { return potential_value(spec_, scales_, x); };
          for (std::size_t i = 0; i + 1 < p.x.size(); ++i) {
            const double lo = std::max(a, p.x[i]);
            const double hi = std::min(b, p.x[i + 1]);
            if (hi > lo) sum += 0.5 * (value_at(lo) + value_at(hi)) * (hi - lo);
          }
          return sum;
        } else {
          return 0.0;  // hard wall: V = 0 inside
        }
      },
      spec_);
}

double KsqProfile::integrate_ksq(double E, double a, double b) const {
  if (a > b) return -integrate_ksq(E, b, a);
  check_domain(a, b);
  return prefactor(E) * (offset(E) * (b - a) + shape_sign() * shape_integral(a, b));
}

double KsqProfile::integrate_ksq_numeric(double E, double a, double b, double tol) const {
  if (a > b) return -integrate_ksq_numeric(E, b, a, tol);
  check_domain(a, b);
  double sum = 0.0;
  const auto pts = split_points(spec_, a, b);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    sum += integrate_endpoint_singular([&](double x) { return ksq(E, x); }, pts[i], pts[i + 1],
                                       tol);
  return sum;
}

namespace {

// Scans a piece for interior k^2 < 0; used to reject forbidden-region phase
// integrals while forgiving roundoff-level dips at turning-point endpoints.
void check_allowed(const KsqProfile& prof, double E, double lo, double hi) {
  double scale = 0.0, min_ksq = inf;
  const int n = 33;
  for (int i = 1; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / n;
    const double k2 = prof.ksq(E, x);
    scale = std::max(scale, std::abs(k2));
    min_ksq = std::min(min_ksq, k2);
  }
  if (min_ksq < -1e-9 * std::max(scale, 1e-300))
    throw ForbiddenRegionError("k^2 < 0 in the interior of a phase integral");
}

}  // namespace

double KsqProfile::integrate_k(double E, double a, double b, double tol) const {
  if (a > b) return -integrate_k(E, b, a, tol);
  check_domain(a, b);
  const bool segments_constant = std::holds_alternative<PiecewiseConstantPotential>(spec_);
  double sum = 0.0;
  const auto pts = split_points(spec_, a, b);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], hi = pts[i + 1];
    if (segments_constant) {
      const double k2 = ksq(E, 0.5 * (lo + hi));
      if (k2 < 0.0) throw ForbiddenRegionError("k^2 < 0 on a piecewise-constant segment");
      sum += std::sqrt(k2) * (hi - lo);
      continue;
    }
    check_allowed(*this, E, lo, hi);
    sum += integrate_endpoint_singular(
        [&](double x) { return std::sqrt(std::max(ksq(E, x), 0.0)); }, lo, hi, tol);
  }
  return sum;
}

double KsqProfile::integrate_k_magnitude(double E, double a, double b, double tol) const {
  if (a > b) return -integrate_k_magnitude(E, b, a, tol);
  check_domain(a, b);
  double sum = 0.0;
  const auto pts = split_points(spec_, a, b);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    sum += integrate_endpoint_singular(
        [&](double x) { return std::sqrt(std::abs(ksq(E, x))); }, pts[i], pts[i + 1], tol);
  return sum;
}

}  // namespace wavebasis
