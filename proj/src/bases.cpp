#include "wavebasis/bases.hpp"

#include <cmath>

#include "wavebasis/errors.hpp"
#include "wavebasis/special.hpp"

namespace wavebasis {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double k_divergence_tol = 1e-12;  // |k| below this flags a divergent prefactor

BasisEvaluation eval_new_bases(const KsqProfile& profile, double E, double x) {
  const double w = x * profile.integrate_ksq(E, 0.0, x);
  BasisEvaluation out;
  out.C = cos_sqrt(w);
  out.S = x * sinc_sqrt(w);
  return out;
}

BasisEvaluation eval_wkb(const KsqProfile& profile, double E, double x, bool prefactor) {
  const double phase = profile.integrate_k(E, 0.0, x, 1e-12);
  BasisEvaluation out;
  if (!prefactor) {
    out.C = std::cos(phase);
    out.S = std::sin(phase);
    return out;
  }
  const double k2 = profile.ksq(E, x);
  if (!(k2 > k_divergence_tol * k_divergence_tol)) {
    out.finite = false;
    out.C = std::copysign(inf, std::cos(phase));
    out.S = std::copysign(inf, std::sin(phase));
    return out;
  }
  const double amp = 1.0 / std::sqrt(std::sqrt(k2));
  out.C = amp * std::cos(phase);
  out.S = amp * std::sin(phase);
  return out;
}

BasisEvaluation eval_airy(const KsqProfile& profile, double E, double x, double xi) {
  if (std::isnan(xi)) throw PreconditionError("AiryImproved basis requires its turning point xi");
  BasisEvaluation out;

  // Removable singularity at the anchoring turning point: the q^(1/6)
  // numerator cancels the 1/sqrt(k) prefactor, leaving Ai(0), Bi(0) times
  // (2/3)^(1/6) |dk^2/dx|^(-1/6).
  if (std::abs(x - xi) <= 1e-9 * std::max(1.0, std::abs(xi))) {
    const double d = 1e-6 * std::max(1.0, std::abs(xi));
    const double slope = (profile.ksq(E, xi + d) - profile.ksq(E, xi - d)) / (2.0 * d);
    const double pre = std::pow(2.0 / 3.0, 1.0 / 6.0) * std::pow(std::abs(slope), -1.0 / 6.0);
    out.C = pre * airy_ai(0.0);
    out.S = pre * airy_bi(0.0);
    return out;
  }

  const double k2 = profile.ksq(E, x);
  const double q = std::abs(profile.integrate_k_magnitude(E, x, xi, 1e-12));
  const double arg_mag = std::pow(1.5 * q, 2.0 / 3.0);
  const double arg = k2 > 0.0 ? -arg_mag : arg_mag;  // minus in the allowed zone
  if (!(std::abs(k2) > k_divergence_tol * k_divergence_tol)) {
    out.finite = false;
    out.C = std::copysign(inf, airy_ai(arg));
    out.S = std::copysign(inf, airy_bi(arg));
    return out;
  }
  const double pre = std::pow(q, 1.0 / 6.0) / std::sqrt(std::sqrt(std::abs(k2)));
  out.C = pre * airy_ai(arg);
  out.S = pre * airy_bi(arg);
  return out;
}

}  // namespace

BasisEvaluation eval_basis(const BasisKind& kind, const KsqProfile& profile, double E, double x) {
  BasisEvaluation out;
  switch (kind.family) {
    case BasisFamily::NewBases:
      out = eval_new_bases(profile, E, x);
      break;
    case BasisFamily::WKB:
      out = eval_wkb(profile, E, x, true);
      break;
    case BasisFamily::SimpleWKB:
      out = eval_wkb(profile, E, x, false);
      break;
    case BasisFamily::AiryImproved:
      out = eval_airy(profile, E, x, kind.xi);
      break;
  }
  out.kind = kind;
  out.x = x;
  return out;
}

double solution_from_ic(const BasisKind& kind, const KsqProfile& profile, double E, double u0,
                        double up0, double x) {
  const BasisEvaluation b = eval_basis(kind, profile, E, x);
  return b.C * u0 + b.S * up0;
}

BasisDerivatives basis_derivative(const BasisKind& kind, const KsqProfile& profile, double E,
                                  double x, double h) {
  if (h <= 0.0) h = 1e-5 * std::max(1.0, std::abs(x));
  const BasisEvaluation p2 = eval_basis(kind, profile, E, x + 2.0 * h);
  const BasisEvaluation p1 = eval_basis(kind, profile, E, x + h);
  const BasisEvaluation m1 = eval_basis(kind, profile, E, x - h);
  const BasisEvaluation m2 = eval_basis(kind, profile, E, x - 2.0 * h);
  BasisDerivatives d;
  d.dC = (-p2.C + 8.0 * p1.C - 8.0 * m1.C + m2.C) / (12.0 * h);
  d.dS = (-p2.S + 8.0 * p1.S - 8.0 * m1.S + m2.S) / (12.0 * h);
  return d;
}

}  // namespace wavebasis
