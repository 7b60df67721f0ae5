#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace wavebasis {

/// State {u, v, u', v'} of y = u + iv satisfying y'' + f y = 0.
struct StateVector4 {
  double u = 0.0;
  double v = 0.0;
  double du = 0.0;
  double dv = 0.0;

  Eigen::Vector4d vec() const { return {u, v, du, dv}; }
  static StateVector4 from_vec(const Eigen::Vector4d& f) { return {f[0], f[1], f[2], f[3]}; }
};

/// Coefficient f(x) = g(x) + i h(x) of the wave equation.
struct ComplexCoefficient {
  std::function<double(double)> g;
  std::function<double(double)> h;

  static ComplexCoefficient real(std::function<double(double)> g_fn) {
    return {std::move(g_fn), [](double) { return 0.0; }};
  }
};

/// Accumulated integrals G = Int g, H = Int h over an interval, realized as
/// the 2x2 block B = -[[G, -H], [H, G]] (the real image of -(G + iH)).
struct AccumulatedB {
  double G = 0.0;
  double H = 0.0;

  std::complex<double> scalar() const { return {-G, -H}; }
  Eigen::Matrix2d block() const;
};

/// 4x4 transfer matrix of the unordered exponential over [a, b].
struct TransferMatrix4 {
  Eigen::Matrix4d Q = Eigen::Matrix4d::Identity();
  double a = 0.0;
  double b = 0.0;
};

/// The cosh/sinh blocks of Q: C = cosh D, S = len D^-1 sinh D,
/// T = (1/len) B S, with D the matrix root of len*B.
struct CSTBlocks {
  Eigen::Matrix2d C;
  Eigen::Matrix2d S;
  Eigen::Matrix2d T;

  Eigen::Matrix4d assemble() const;
};

/// Real 2x2 image of a complex scalar p + iq as [[p, -q], [q, p]].
Eigen::Matrix2d embed_complex(std::complex<double> z);

/// Quadrature of g and h over [a, b] (adaptive, tolerance `tol`).
AccumulatedB accumulate_B(const ComplexCoefficient& f, double a, double b, double tol = 1e-10);

/// Matrix root D with D^2 = x B, taken as the image of the principal complex
/// square root of -x(G + iH). The branch choice cancels in every even
/// function of D used by the transfer matrix.
Eigen::Matrix2d matrix_D(const AccumulatedB& B, double x);

/// C/S/T blocks for an interval of length `len` with accumulated B.
CSTBlocks cst_blocks(const AccumulatedB& B, double len);

/// Single-interval transfer matrix over [a, b] (no interior ordering).
TransferMatrix4 transfer_Q(const ComplexCoefficient& f, double a, double b, double tol = 1e-10);

/// transfer matrix built from an exact accumulated B; callers with closed
/// forms for the integrals use this to bypass quadrature.
TransferMatrix4 transfer_Q_from_B(const AccumulatedB& B, double a, double b);

StateVector4 propagate(const TransferMatrix4& Q, const StateVector4& F0);

/// Q_ac = Q_bc Q_ab. Endpoints must chain.
TransferMatrix4 compose(const TransferMatrix4& Q_ab, const TransferMatrix4& Q_bc);

TransferMatrix4 invert(const TransferMatrix4& Q_ab);

/// Restores the ordered product by composing single-interval matrices over
/// n_segments equal pieces; converges at second order in the segment width.
TransferMatrix4 piecewise_propagate(const ComplexCoefficient& f, double a, double b,
                                    int n_segments);

}  // namespace wavebasis
