#pragma once

// Rounding a near-optimal primal point to the exact optimum.
//
// Given an approximate primal solution x, the n smallest values among
// {x_i} u {b_j - A_j x} are guessed to be the constraints tight at the
// optimum. Coordinates not guessed tight form U, rows guessed tight form V,
// and the exact pair is recovered from the square systems
//
//   A_{V,U} x_U = b_V,        y_V A_{V,U} = c_U.
//
// The geometric quantities below certify how close x must be for the guess
// to be right.

#include "smoothlp/linalg.hpp"
#include "smoothlp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace smoothlp {

/// Positive primal coordinates (U) and positive dual coordinates (V), 0-based and sorted.
struct SupportPair {
  std::vector<Index> U;
  std::vector<Index> V;

  friend bool operator==(const SupportPair&, const SupportPair&) = default;
};

/// Substitute for +inf when a certified bound has to be printed or stored.
inline constexpr double kReportedInfinity = 1e300;

template <typename Scalar>
struct GeomQuantities {
  Scalar alpha_P;
  Scalar alpha_D;
  Scalar beta_P;
  Scalar beta_D;
  Scalar gamma;
  Scalar lambda;
  Scalar delta_lb;
  Scalar norm_A;  // spectral norm entering delta_lb
};

struct RoundingFailure {
  enum class Reason { SingularMatrix, SizeMismatch };
  Reason reason;
  std::string message;
};

template <typename Scalar>
using RoundingResult = std::variant<PrimalDualPoint<Scalar>, RoundingFailure>;

struct InconsistentSupport : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

template <typename Scalar>
MatrixX<Scalar> submatrix(const MatrixX<Scalar>& A, const std::vector<Index>& rows, const std::vector<Index>& cols) {
  MatrixX<Scalar> out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(Index(r), Index(c)) = A(rows[r], cols[c]);
  return out;
}

template <typename Scalar>
VectorX<Scalar> gather(const VectorX<Scalar>& v, const std::vector<Index>& idx) {
  VectorX<Scalar> out(static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out(Index(i)) = v(idx[i]);
  return out;
}

inline std::vector<Index> complement(const std::vector<Index>& set, Index size) {
  std::vector<Index> out;
  std::vector<bool> in(static_cast<std::size_t>(size), false);
  for (Index i : set) in[static_cast<std::size_t>(i)] = true;
  for (Index i = 0; i < size; ++i)
    if (!in[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

template <typename Scalar>
Scalar min_or_inf(const VectorX<Scalar>& v, const std::vector<Index>& idx) {
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Index i : idx) best = std::min(best, v(i));
  return best;
}

// factor * norm where an infinite factor times a zero norm counts as zero.
template <typename Scalar>
Scalar scaled(Scalar factor, Scalar norm) {
  if (norm == Scalar(0)) return Scalar(0);
  return factor * norm;
}

}  // namespace detail

template <typename Scalar>
SupportPair candidate_supports(const LinearProgram<Scalar>& lp, const VectorX<Scalar>& x) {
  if (x.size() != lp.n()) throw DimensionMismatch("candidate_supports: x has wrong length");
  const Index n = lp.n();
  const Index m = lp.m();
  const VectorX<Scalar> slack = lp.b - lp.A * x;

  // (value, kind, index); kind 0 = row slack, 1 = coordinate, so slacks win ties.
  std::vector<std::tuple<Scalar, int, Index>> values;
  values.reserve(static_cast<std::size_t>(n + m));
  for (Index j = 0; j < m; ++j) values.emplace_back(slack(j), 0, j);
  for (Index i = 0; i < n; ++i) values.emplace_back(x(i), 1, i);
  std::partial_sort(values.begin(), values.begin() + n, values.end());

  SupportPair sp;
  std::vector<bool> coord_tight(static_cast<std::size_t>(n), false);
  for (Index k = 0; k < n; ++k) {
    const auto& [value, kind, index] = values[static_cast<std::size_t>(k)];
    if (kind == 0)
      sp.V.push_back(index);
    else
      coord_tight[static_cast<std::size_t>(index)] = true;
  }
  for (Index i = 0; i < n; ++i)
    if (!coord_tight[static_cast<std::size_t>(i)]) sp.U.push_back(i);
  std::sort(sp.V.begin(), sp.V.end());
  return sp;
}

template <typename Scalar>
RoundingResult<Scalar> round_primal_dual(const LinearProgram<Scalar>& lp, const SupportPair& sp) {
  if (sp.U.size() != sp.V.size())
    return RoundingFailure{RoundingFailure::Reason::SizeMismatch, "|U| != |V|"};
  const MatrixX<Scalar> block = detail::submatrix(lp.A, sp.V, sp.U);
  PrimalDualPoint<Scalar> pt{VectorX<Scalar>::Zero(lp.n()), VectorX<Scalar>::Zero(lp.m())};
  try {
    const VectorX<Scalar> xu = solve_square(block, detail::gather(lp.b, sp.V));
    const VectorX<Scalar> yv = solve_square(block.transpose(), detail::gather(lp.c, sp.U));
    for (std::size_t k = 0; k < sp.U.size(); ++k) pt.x(sp.U[k]) = xu(Index(k));
    for (std::size_t k = 0; k < sp.V.size(); ++k) pt.y(sp.V[k]) = yv(Index(k));
  } catch (const SingularMatrix& e) {
    return RoundingFailure{RoundingFailure::Reason::SingularMatrix, e.what()};
  }
  return pt;
}

/// True iff `pt` is primal feasible, dual feasible, and closes the duality gap.
template <typename Scalar>
bool verify_candidate(const LinearProgram<Scalar>& lp, const PrimalDualPoint<Scalar>& pt) {
  if (pt.x.size() != lp.n() || pt.y.size() != lp.m()) return false;
  if (!pt.x.allFinite() || !pt.y.allFinite()) return false;
  const Scalar tol = feasibility_tolerance(lp);
  if (!primal_feasible(lp, pt.x, tol) || !dual_feasible(lp, pt.y, tol)) return false;
  const Scalar primal_obj = lp.c.dot(pt.x);
  return std::abs(pt.y.dot(lp.b) - primal_obj) <= Scalar(1e-8) * (Scalar(1) + std::abs(primal_obj));
}

/// Threshold for calling an optimal coordinate strictly positive.
inline constexpr double kSupportTolerance = 1e-9;

template <typename Scalar>
SupportPair support_of(const PrimalDualPoint<Scalar>& pt, Scalar tol = Scalar(kSupportTolerance)) {
  SupportPair sp;
  for (Index i = 0; i < pt.x.size(); ++i)
    if (pt.x(i) > tol) sp.U.push_back(i);
  for (Index j = 0; j < pt.y.size(); ++j)
    if (pt.y(j) > tol) sp.V.push_back(j);
  return sp;
}

/// delta lower bound lambda^2 min(gamma, 1) / (2 max(1, sqrt(n) ||A||) (1 + ||A||)).
/// gamma is capped at 1 because the distance bound it comes from carries
/// min(gamma, 1); gamma is +inf when U is empty.
template <typename Scalar>
Scalar rounding_threshold(Scalar lambda, Scalar gamma, Scalar norm_A, Index n) {
  if (!std::isfinite(lambda)) return Scalar(kReportedInfinity);
  const Scalar denom = Scalar(2) * std::max(Scalar(1), std::sqrt(Scalar(n)) * norm_A) * (Scalar(1) + norm_A);
  return std::min(Scalar(kReportedInfinity), lambda * lambda * std::min(gamma, Scalar(1)) / denom);
}

template <typename Scalar>
GeomQuantities<Scalar> geometric_quantities(const LinearProgram<Scalar>& lp, const PrimalDualPoint<Scalar>& pt,
                                            const SupportPair& sp) {
  check_dimensions(lp, pt);
  if (!verify_candidate(lp, pt)) throw InconsistentSupport("point is not a verified optimal pair");
  if (!(support_of(pt) == sp)) throw InconsistentSupport("support pair does not match the positive coordinates");

  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  const VectorX<Scalar> primal_slack = lp.b - lp.A * pt.x;
  const VectorX<Scalar> dual_slack = (pt.y.transpose() * lp.A).transpose() - lp.c;
  const auto U_bar = detail::complement(sp.U, lp.n());
  const auto V_bar = detail::complement(sp.V, lp.m());

  GeomQuantities<Scalar> g;
  g.alpha_P = detail::min_or_inf(pt.x, sp.U);
  g.alpha_D = detail::min_or_inf(pt.y, sp.V);
  g.beta_P = detail::min_or_inf(primal_slack, V_bar);
  g.beta_D = detail::min_or_inf(dual_slack, U_bar);

  g.gamma = inf;
  if (!sp.V.empty()) {
    const MatrixX<Scalar> block = detail::submatrix(lp.A, sp.V, sp.U);
    for (std::size_t k = 0; k < sp.U.size(); ++k) {
      MatrixX<Scalar> others(block.rows(), block.cols() - 1);
      for (Index c = 0, o = 0; c < block.cols(); ++c)
        if (c != Index(k)) others.col(o++) = block.col(c);
      g.gamma = std::min(g.gamma, distance_to_span(block.col(Index(k)), others));
    }
  }

  g.lambda = inf;
  for (Scalar q : {g.alpha_P, g.alpha_D, g.beta_P, g.beta_D})
    if (std::isfinite(q)) g.lambda = std::min(g.lambda, q);

  g.norm_A = spectral_norm(lp.A);
  g.delta_lb = rounding_threshold(g.lambda, g.gamma, g.norm_A, lp.n());
  return g;
}

struct InequalityMargin {
  double lhs;
  double rhs;
  bool holds;
};

/// Both sides of the four inequalities that tie objective gap to distance
/// from the optimum, evaluated at one feasible point.
struct ClosenessReport {
  InequalityMargin gap_vs_tight_rows;     // c(x*-x) >= alpha_D ||A_V (x*-x)||
  InequalityMargin tight_rows_vs_support; // ||A_VU (x*_U - x_U)|| >= gamma ||x*_U - x_U||_inf
  InequalityMargin off_support_mass;      // ||x_Ubar|| <= c(x*-x) / beta_D
  InequalityMargin distance_to_optimum;   // ||x*-x||_inf <= c(x*-x)(1+||A||) / (lambda min(gamma,1))

  bool all_hold() const {
    return gap_vs_tight_rows.holds && tight_rows_vs_support.holds && off_support_mass.holds &&
           distance_to_optimum.holds;
  }
};

namespace detail {
inline InequalityMargin at_least(double lhs, double rhs) {
  return {lhs, rhs, lhs >= rhs - 1e-8 * (1.0 + std::abs(rhs))};
}
inline InequalityMargin at_most(double lhs, double rhs) {
  return {lhs, rhs, lhs <= rhs + 1e-8 * (1.0 + std::abs(rhs))};
}
}  // namespace detail

template <typename Scalar>
ClosenessReport check_closeness_lemmas(const LinearProgram<Scalar>& lp, const PrimalDualPoint<Scalar>& pt_opt,
                                       const SupportPair& sp, const VectorX<Scalar>& x_feas) {
  if (x_feas.size() != lp.n()) throw DimensionMismatch("check_closeness_lemmas: x has wrong length");
  if (!primal_feasible(lp, x_feas, feasibility_tolerance(lp)))
    throw std::invalid_argument("check_closeness_lemmas: probe point is not primal feasible");
  const GeomQuantities<Scalar> g = geometric_quantities(lp, pt_opt, sp);

  const VectorX<Scalar> diff = pt_opt.x - x_feas;
  const Scalar gap = lp.c.dot(diff);
  const auto U_bar = detail::complement(sp.U, lp.n());

  std::vector<Index> all_cols(static_cast<std::size_t>(lp.n()));
  std::iota(all_cols.begin(), all_cols.end(), Index(0));
  const Scalar tight_rows_norm = (detail::submatrix(lp.A, sp.V, all_cols) * diff).norm();
  const VectorX<Scalar> diff_U = detail::gather(diff, sp.U);
  const Scalar support_rows_norm = (detail::submatrix(lp.A, sp.V, sp.U) * diff_U).norm();
  const Scalar diff_U_inf = diff_U.size() ? diff_U.cwiseAbs().maxCoeff() : Scalar(0);
  const Scalar off_support = detail::gather(x_feas, U_bar).norm();
  const Scalar dist_inf = diff.size() ? diff.cwiseAbs().maxCoeff() : Scalar(0);

  ClosenessReport r;
  r.gap_vs_tight_rows = detail::at_least(double(gap), double(detail::scaled(g.alpha_D, tight_rows_norm)));
  r.tight_rows_vs_support = detail::at_least(double(support_rows_norm), double(detail::scaled(g.gamma, diff_U_inf)));
  r.off_support_mass = detail::at_most(double(off_support), double(std::isfinite(g.beta_D) ? gap / g.beta_D : Scalar(0)));
  const Scalar close_rhs = std::isfinite(g.lambda) ? gap * (Scalar(1) + g.norm_A) / (g.lambda * std::min(g.gamma, Scalar(1)))
                                                   : Scalar(0);
  r.distance_to_optimum = detail::at_most(double(dist_inf), double(close_rhs));
  return r;
}

}  // namespace smoothlp
