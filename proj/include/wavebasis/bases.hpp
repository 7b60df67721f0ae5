#pragma once

#include <limits>

#include "wavebasis/profile.hpp"

namespace wavebasis {

enum class BasisFamily {
  NewBases,     // C = cos sqrt(x Int k^2), S = x sinc sqrt(x Int k^2)
  WKB,          // cos/sin of the phase with 1/sqrt(k) prefactor
  SimpleWKB,    // cos/sin of the phase, no prefactor
  AiryImproved  // Ai/Bi forms anchored at a turning point
};

/// Basis selector; AiryImproved carries the anchoring turning point xi.
struct BasisKind {
  BasisFamily family = BasisFamily::NewBases;
  double xi = std::numeric_limits<double>::quiet_NaN();

  static BasisKind new_bases() { return {BasisFamily::NewBases, {}}; }
  static BasisKind wkb() { return {BasisFamily::WKB, {}}; }
  static BasisKind simple_wkb() { return {BasisFamily::SimpleWKB, {}}; }
  static BasisKind airy_improved(double xi_anchor) {
    return {BasisFamily::AiryImproved, xi_anchor};
  }
};

/// Values of the cosine-like (C) and sine-like (S) members of a basis pair
/// at one point. `finite` is false where a 1/sqrt(k) prefactor diverges
/// (|k| below 1e-12); C and S then hold signed-infinity sentinels. The
/// NewBases and SimpleWKB families are finite everywhere.
struct BasisEvaluation {
  double C = 0.0;
  double S = 0.0;
  BasisKind kind;
  double x = 0.0;
  bool finite = true;
};

BasisEvaluation eval_basis(const BasisKind& kind, const KsqProfile& profile, double E, double x);

/// u(x) = C(x) u(0) + S(x) u'(0). Non-finite bases propagate into the result.
double solution_from_ic(const BasisKind& kind, const KsqProfile& profile, double E, double u0,
                        double up0, double x);

struct BasisDerivatives {
  double dC = 0.0;
  double dS = 0.0;
};

/// Fourth-order central finite differences of C and S at x. Step defaults to
/// 1e-5 * max(1, |x|) when h <= 0.
BasisDerivatives basis_derivative(const BasisKind& kind, const KsqProfile& profile, double E,
                                  double x, double h = 0.0);

}  // namespace wavebasis
