#pragma once

// Primal/dual LP pair
//
//   primal:  max c x   s.t.  A x <= b,  x >= 0
//   dual:    min y b   s.t.  y A >= c,  y >= 0
//
// together with residual diagnostics and the matrix norms used throughout.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace smoothlp {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct LinearProgram {
  MatrixX<Scalar> A;
  VectorX<Scalar> b;
  VectorX<Scalar> c;

  Index m() const { return A.rows(); }
  Index n() const { return A.cols(); }
};

template <typename Scalar>
struct PrimalDualPoint {
  VectorX<Scalar> x;
  VectorX<Scalar> y;
};

using LinearProgramd = LinearProgram<double>;
using PrimalDualPointd = PrimalDualPoint<double>;

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit, NumericalFailure };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::IterationLimit: return "IterationLimit";
    case SolveStatus::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

template <typename Scalar>
struct ResidualReport {
  VectorX<Scalar> primal_slack;  // b - A x
  Scalar primal_nonneg_violation;
  VectorX<Scalar> dual_slack;  // y A - c
  Scalar dual_nonneg_violation;
  Scalar duality_gap;  // y b - c x
};

template <typename Scalar>
struct MatrixNorms {
  Scalar spectral;
  Scalar frobenius;
  Scalar row_sum_inf;
};

/// Lists every violated invariant of `lp`; an empty list means well formed.
template <typename Scalar>
std::vector<std::string> validate(const LinearProgram<Scalar>& lp) {
  std::vector<std::string> out;
  if (lp.m() < 1 || lp.n() < 1) out.push_back("empty constraint matrix");
  if (lp.m() < lp.n()) out.push_back("m < n");
  if (lp.b.size() != lp.m()) out.push_back("b has length " + std::to_string(lp.b.size()) + ", expected m");
  if (lp.c.size() != lp.n()) out.push_back("c has length " + std::to_string(lp.c.size()) + ", expected n");
  for (Index i = 0; i < lp.A.rows(); ++i)
    for (Index j = 0; j < lp.A.cols(); ++j)
      if (!std::isfinite(lp.A(i, j)))
        out.push_back("non-finite entry at A[" + std::to_string(i) + "," + std::to_string(j) + "]");
  for (Index i = 0; i < lp.b.size(); ++i)
    if (!std::isfinite(lp.b(i))) out.push_back("non-finite entry at b[" + std::to_string(i) + "]");
  for (Index i = 0; i < lp.c.size(); ++i)
    if (!std::isfinite(lp.c(i))) out.push_back("non-finite entry at c[" + std::to_string(i) + "]");
  return out;
}

template <typename Scalar>
void check_dimensions(const LinearProgram<Scalar>& lp, const PrimalDualPoint<Scalar>& pt) {
  if (lp.b.size() != lp.m() || lp.c.size() != lp.n())
    throw DimensionMismatch("linear program has inconsistent dimensions");
  if (pt.x.size() != lp.n() || pt.y.size() != lp.m())
    throw DimensionMismatch("point dimensions do not match the linear program");
}

template <typename Scalar>
ResidualReport<Scalar> residuals(const LinearProgram<Scalar>& lp, const PrimalDualPoint<Scalar>& pt) {
  check_dimensions(lp, pt);
  ResidualReport<Scalar> r;
  r.primal_slack = lp.b - lp.A * pt.x;
  r.dual_slack = (pt.y.transpose() * lp.A).transpose() - lp.c;
  r.primal_nonneg_violation = pt.x.size() ? std::max(Scalar(0), -pt.x.minCoeff()) : Scalar(0);
  r.dual_nonneg_violation = pt.y.size() ? std::max(Scalar(0), -pt.y.minCoeff()) : Scalar(0);
  r.duality_gap = pt.y.dot(lp.b) - lp.c.dot(pt.x);
  return r;
}

/// Feasibility tolerance shared by every verification routine.
template <typename Scalar>
Scalar feasibility_tolerance(const LinearProgram<Scalar>& lp) {
  return Scalar(1e-9) * (Scalar(1) + lp.b.norm());
}

template <typename Scalar>
bool primal_feasible(const LinearProgram<Scalar>& lp, const VectorX<Scalar>& x, Scalar tol) {
  if (x.size() != lp.n()) throw DimensionMismatch("x has wrong length");
  if (x.size() && x.minCoeff() < -tol) return false;
  VectorX<Scalar> slack = lp.b - lp.A * x;
  return slack.size() == 0 || slack.minCoeff() >= -tol;
}

template <typename Scalar>
bool dual_feasible(const LinearProgram<Scalar>& lp, const VectorX<Scalar>& y, Scalar tol) {
  if (y.size() != lp.m()) throw DimensionMismatch("y has wrong length");
  if (y.size() && y.minCoeff() < -tol) return false;
  VectorX<Scalar> slack = (y.transpose() * lp.A).transpose() - lp.c;
  return slack.size() == 0 || slack.minCoeff() >= -tol;
}

/// Largest singular value. Two-sided Jacobi SVD iterates to full working
/// precision and, unlike power iteration, does not slow down when the top
/// two singular values nearly coincide.
template <typename Derived>
typename Derived::Scalar spectral_norm(const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  if (A.size() == 0) return Scalar(0);
  const Eigen::JacobiSVD<MatrixX<Scalar>> svd(A.eval());
  return svd.singularValues()(0);
}

template <typename Derived>
MatrixNorms<typename Derived::Scalar> matrix_norms(const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  if (!A.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  MatrixNorms<Scalar> out;
  out.spectral = spectral_norm(A);
  out.frobenius = A.norm();
  out.row_sum_inf = A.size() ? A.cwiseAbs().rowwise().sum().maxCoeff() : Scalar(0);
  return out;
}

}  // namespace smoothlp
