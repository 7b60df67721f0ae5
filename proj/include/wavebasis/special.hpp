#pragma once

namespace wavebasis {

/// cos(sqrt(w)) continued as an entire function of w: equals cosh(sqrt(-w))
/// for w < 0. A short Taylor series takes over for |w| < 1e-4 to avoid
/// cancellation near w = 0.
double cos_sqrt(double w);

/// sin(sqrt(w))/sqrt(w), continued as sinh(sqrt(-w))/sqrt(-w) for w < 0 and
/// equal to 1 at w = 0. Entire in w, with the same small-|w| series
/// switchover as cos_sqrt.
double sinc_sqrt(double w);

/// Airy functions of the first and second kind. Self-contained evaluation:
/// Maclaurin series for moderate arguments, asymptotic expansions beyond.
/// Absolute-or-relative accuracy target 1e-8 over the real line.
double airy_ai(double z);
double airy_bi(double z);

}  // namespace wavebasis
