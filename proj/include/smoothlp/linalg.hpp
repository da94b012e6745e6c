#pragma once

// Square solves and distance-to-span, the two kernels of the rounding step.

#include "smoothlp/lp.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace smoothlp {

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Relative pivot threshold below which a square system is declared singular.
inline constexpr double kSingularPivotTolerance = 1e-12;

/// Solves M z = v by Gaussian elimination with partial pivoting.
///
/// Throws SingularMatrix when a pivot falls below 1e-12 * ||M||_F, which in
/// the rounding step means the guessed support is degenerate.
template <typename DerivedM, typename DerivedV>
VectorX<typename DerivedM::Scalar> solve_square(const Eigen::MatrixBase<DerivedM>& M,
                                                const Eigen::MatrixBase<DerivedV>& v) {
  using Scalar = typename DerivedM::Scalar;
  const Index k = M.rows();
  if (M.cols() != k || v.size() != k) throw DimensionMismatch("solve_square: dimensions disagree");
  if (k == 0) return VectorX<Scalar>(0);

  MatrixX<Scalar> lu = M;
  VectorX<Scalar> rhs = v;
  const Scalar threshold = Scalar(kSingularPivotTolerance) * M.norm();

  for (Index col = 0; col < k; ++col) {
    Index pivot = col;
    lu.col(col).tail(k - col).cwiseAbs().maxCoeff(&pivot);
    pivot += col;
    if (!(std::abs(lu(pivot, col)) > threshold)) throw SingularMatrix("pivot below singularity threshold");
    if (pivot != col) {
      lu.row(col).swap(lu.row(pivot));
      std::swap(rhs(col), rhs(pivot));
    }
    for (Index r = col + 1; r < k; ++r) {
      const Scalar f = lu(r, col) / lu(col, col);
      if (f == Scalar(0)) continue;
      lu.row(r).tail(k - col) -= f * lu.row(col).tail(k - col);
      rhs(r) -= f * rhs(col);
    }
  }

  VectorX<Scalar> z(k);
  for (Index r = k - 1; r >= 0; --r) {
    Scalar acc = rhs(r);
    for (Index j = r + 1; j < k; ++j) acc -= lu(r, j) * z(j);
    z(r) = acc / lu(r, r);
  }
  return z;
}

/// Euclidean distance from `u` to the column span of `B`.
///
/// An empty basis (zero columns) spans {0}, so the distance is ||u||.
template <typename DerivedU, typename DerivedB>
typename DerivedU::Scalar distance_to_span(const Eigen::MatrixBase<DerivedU>& u,
                                           const Eigen::MatrixBase<DerivedB>& B) {
  using Scalar = typename DerivedU::Scalar;
  if (B.cols() == 0) return u.norm();
  if (B.rows() != u.size()) throw DimensionMismatch("distance_to_span: basis rows must match vector length");

  const MatrixX<Scalar> basis = B;
  Eigen::ColPivHouseholderQR<MatrixX<Scalar>> qr(basis);
  const VectorX<Scalar> rotated = qr.householderQ().adjoint() * u;
  const Index rank = qr.rank();
  return rotated.tail(rotated.size() - rank).norm();
}

}  // namespace smoothlp
