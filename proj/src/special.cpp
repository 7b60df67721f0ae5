#include "wavebasis/special.hpp"

#include <cmath>

namespace wavebasis {

double cos_sqrt(double w) {
  if (std::abs(w) < 1e-4) {
    // cos(sqrt(w)) = 1 - w/2 + w^2/24 - w^3/720 + O(w^4/8!)
    return 1.0 + w * (-0.5 + w * (1.0 / 24.0 - w / 720.0));
  }
  if (w >= 0.0) return std::cos(std::sqrt(w));
  return std::cosh(std::sqrt(-w));
}

double sinc_sqrt(double w) {
  if (std::abs(w) < 1e-4) {
    // sinc(sqrt(w)) = 1 - w/6 + w^2/120 + O(w^3/7!)
    return 1.0 + w * (-1.0 / 6.0 + w / 120.0);
  }
  if (w >= 0.0) {
    const double r = std::sqrt(w);
    return std::sin(r) / r;
  }
  const double r = std::sqrt(-w);
  return std::sinh(r) / r;
}

namespace {

// Ai(0) = 3^(-2/3)/Gamma(2/3), Ai'(0) = -3^(-1/3)/Gamma(1/3)
constexpr double kAiryC1 = 0.35502805388781723926;
constexpr double kAiryC2 = 0.25881940379280679840;
constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kInvSqrtPi = 0.56418958354775628695;

// Threshold between the Maclaurin series and the asymptotic expansions. The
// series runs in long double because Ai(z) for z > 0 suffers cancellation
// that grows like exp(2*zeta).
constexpr double kSeriesRadius = 6.5;

struct AiBi {
  double ai;
  double bi;
};

AiBi airy_series(double z) {
  // f = sum a_k, a_0 = 1,      a_{k+1} = a_k z^3 / ((3k+2)(3k+3))
  // g = sum b_k, b_0 = z,      b_{k+1} = b_k z^3 / ((3k+3)(3k+4))
  const long double z3 = static_cast<long double>(z) * z * z;
  long double f = 1.0L, g = z;
  long double af = 1.0L, bg = z;
  for (int k = 0; k < 200; ++k) {
    af *= z3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
    bg *= z3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
    f += af;
    g += bg;
    if (std::abs(static_cast<double>(af)) < 1e-22 * (1.0 + std::abs(static_cast<double>(f))) &&
        std::abs(static_cast<double>(bg)) < 1e-22 * (1.0 + std::abs(static_cast<double>(g))))
      break;
  }
  const long double ai = kAiryC1 * f - kAiryC2 * g;
  const long double bi = kSqrt3 * (kAiryC1 * f + kAiryC2 * g);
  return {static_cast<double>(ai), static_cast<double>(bi)};
}

// Asymptotic coefficient recurrence u_{k+1}/u_k, DLMF 9.7.
double u_ratio(int k) {
  return (6.0 * k + 1.0) * (6.0 * k + 3.0) * (6.0 * k + 5.0) /
         (108.0 * (2.0 * k + 1.0) * (2.0 * k + 2.0));
}

AiBi airy_asymptotic_pos(double z) {
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  double term = 1.0, sum_m = 1.0, sum_p = 1.0;
  double prev = 1.0;
  for (int k = 0; k < 40; ++k) {
    term *= u_ratio(k) / zeta;
    if (std::abs(term) >= prev) break;  // divergent tail reached
    sum_m += (k % 2 == 0 ? -term : term);
    sum_p += term;
    prev = std::abs(term);
    if (prev < 1e-17) break;
  }
  const double q = kInvSqrtPi / std::pow(z, 0.25);
  return {0.5 * q * std::exp(-zeta) * sum_m, q * std::exp(zeta) * sum_p};
}

AiBi airy_asymptotic_neg(double z) {
  // z < 0; oscillatory region, DLMF 9.7.9-9.7.11 with t = |z|
  const double t = -z;
  const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
  double even = 1.0, odd = 0.0;
  double term = 1.0, prev = 1.0;
  for (int k = 0; k < 40; ++k) {
    term *= u_ratio(k) / zeta;
    if (std::abs(term) >= prev) break;
    const int idx = k + 1;  // term now holds u_idx / zeta^idx
    const double signed_term = ((idx / 2) % 2 == 0 ? term : -term);
    if (idx % 2 == 0)
      even += signed_term;
    else
      odd += signed_term;
    prev = std::abs(term);
    if (prev < 1e-17) break;
  }
  const double q = kInvSqrtPi / std::pow(t, 0.25);
  const double s = std::sin(zeta + 0.25 * M_PI);
  const double c = std::cos(zeta + 0.25 * M_PI);
  return {q * (s * even - c * odd), q * (c * even + s * odd)};
}

}  // namespace

double airy_ai(double z) {
  if (z > kSeriesRadius) return airy_asymptotic_pos(z).ai;
  if (z < -kSeriesRadius) return airy_asymptotic_neg(z).ai;
  return airy_series(z).ai;
}

double airy_bi(double z) {
  if (z > kSeriesRadius) return airy_asymptotic_pos(z).bi;
  if (z < -kSeriesRadius) return airy_asymptotic_neg(z).bi;
  return airy_series(z).bi;
}

}  // namespace wavebasis
