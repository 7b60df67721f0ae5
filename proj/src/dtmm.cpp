#include "wavebasis/dtmm.hpp"

#include <cmath>

#include "wavebasis/errors.hpp"
#include "wavebasis/quadrature.hpp"

namespace wavebasis {

namespace {

using cplx = std::complex<double>;

// sinh(d)/d, series near 0 to dodge cancellation
cplx sinhc(cplx d) {
  if (std::abs(d) < 1e-4) {
    const cplx d2 = d * d;
    return 1.0 + d2 / 6.0 + d2 * d2 / 120.0;
  }
  return std::sinh(d) / d;
}

Eigen::Matrix4d assemble_blocks(const Eigen::Matrix2d& C, const Eigen::Matrix2d& S,
                                const Eigen::Matrix2d& T) {
  Eigen::Matrix4d Q;
  Q.block<2, 2>(0, 0) = C;
  Q.block<2, 2>(0, 2) = S;
  Q.block<2, 2>(2, 0) = T;
  Q.block<2, 2>(2, 2) = C;
  return Q;
}

}  // namespace

Eigen::Matrix2d embed_complex(cplx z) {
  Eigen::Matrix2d m;
  m << z.real(), -z.imag(), z.imag(), z.real();
  return m;
}

Eigen::Matrix2d AccumulatedB::block() const { return embed_complex(scalar()); }

AccumulatedB accumulate_B(const ComplexCoefficient& f, double a, double b, double tol) {
  AccumulatedB out;
  out.G = integrate_adaptive(f.g, a, b, tol);
  out.H = integrate_adaptive(f.h, a, b, tol);
  return out;
}

Eigen::Matrix2d matrix_D(const AccumulatedB& B, double x) {
  cplx z = static_cast<double>(x) * B.scalar();
  // keep the branch cut resolution at +i sqrt for negative reals
  if (z.imag() == 0.0) z = cplx(z.real(), 0.0);
  return embed_complex(std::sqrt(z));
}

CSTBlocks cst_blocks(const AccumulatedB& B, double len) {
  CSTBlocks out;
  if (len == 0.0) {
    out.C = Eigen::Matrix2d::Identity();
    out.S = Eigen::Matrix2d::Zero();
    out.T = Eigen::Matrix2d::Zero();
    return out;
  }
  const cplx z = B.scalar();
  const cplx d = std::sqrt(len * z);
  const cplx sc = sinhc(d);
  out.C = embed_complex(std::cosh(d));
  out.S = embed_complex(len * sc);
  // T = (1/len) d sinh(d) = z sinhc(d); no division by d
  out.T = embed_complex(z * sc);
  return out;
}

Eigen::Matrix4d CSTBlocks::assemble() const { return assemble_blocks(C, S, T); }

TransferMatrix4 transfer_Q_from_B(const AccumulatedB& B, double a, double b) {
  TransferMatrix4 out;
  out.a = a;
  out.b = b;
  out.Q = cst_blocks(B, b - a).assemble();
  return out;
}

TransferMatrix4 transfer_Q(const ComplexCoefficient& f, double a, double b, double tol) {
  if (b < a) throw PreconditionError("transfer_Q requires b >= a");
  if (a == b) return TransferMatrix4{Eigen::Matrix4d::Identity(), a, b};
  return transfer_Q_from_B(accumulate_B(f, a, b, tol), a, b);
}

StateVector4 propagate(const TransferMatrix4& Q, const StateVector4& F0) {
  return StateVector4::from_vec(Q.Q * F0.vec());
}

TransferMatrix4 compose(const TransferMatrix4& Q_ab, const TransferMatrix4& Q_bc) {
  const double scale = std::max({1.0, std::abs(Q_ab.b), std::abs(Q_bc.a)});
  if (std::abs(Q_ab.b - Q_bc.a) > 1e-9 * scale)
    throw PreconditionError("compose: interval endpoints do not chain");
  TransferMatrix4 out;
  out.a = Q_ab.a;
  out.b = Q_bc.b;
  out.Q = Q_bc.Q * Q_ab.Q;
  return out;
}

TransferMatrix4 invert(const TransferMatrix4& Q_ab) {
  TransferMatrix4 out;
  out.a = Q_ab.b;
  out.b = Q_ab.a;
  out.Q = Q_ab.Q.inverse();
  return out;
}

TransferMatrix4 piecewise_propagate(const ComplexCoefficient& f, double a, double b,
                                    int n_segments) {
  if (n_segments < 1) throw PreconditionError("piecewise_propagate: n_segments must be >= 1");
  // Tighter per-segment tolerance keeps accumulated quadrature noise below
  // the ordering error being studied.
  const double tol = 1e-12;
  TransferMatrix4 total{Eigen::Matrix4d::Identity(), a, a};
  for (int i = 0; i < n_segments; ++i) {
    const double lo = a + (b - a) * static_cast<double>(i) / n_segments;
    const double hi = (i + 1 == n_segments) ? b : a + (b - a) * (i + 1.0) / n_segments;
    total = compose(total, transfer_Q(f, lo, hi, tol));
  }
  return total;
}

}  // namespace wavebasis
