#include "smoothlp/ipm.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace smoothlp {

int SolverOptions::effective_period(Index n) const {
  if (termination_period > 0) return termination_period;
  return std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
}

void SolverOptions::check() const {
  if (!(gap_tolerance > 0)) throw std::invalid_argument("gap_tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (termination_period < 0) throw std::invalid_argument("termination_period must be at least 1");
}

namespace {

using Eigen::VectorXd;

constexpr double kStepFraction = 0.99;
constexpr double kDivergence = 1e12;

// Largest a in (0, 1] keeping v + a dv >= 0.
double max_step(const VectorXd& v, const VectorXd& dv) {
  double a = 1.0;
  for (Index i = 0; i < v.size(); ++i)
    if (dv(i) < 0) a = std::min(a, -v(i) / dv(i));
  return a;
}

struct Iterate {
  VectorXd x, s, y, w;
};

struct Direction {
  VectorXd dx, ds, dy, dw;
};

class NewtonSystem {
 public:
  NewtonSystem(const LinearProgramd& lp, const Iterate& it) : lp_(lp), it_(it) {
    const VectorXd row_scale = it.y.cwiseQuotient(it.s);
    Eigen::MatrixXd normal = lp.A.transpose() * row_scale.asDiagonal() * lp.A;
    normal.diagonal() += it.w.cwiseQuotient(it.x);
    ldlt_.compute(normal);
    if (ldlt_.info() != Eigen::Success) throw NumericalFailure("normal equations factorization failed");
  }

  // Solves the linearized KKT system with complementarity right-hand sides
  // r_xw (for x o w) and r_ys (for y o s).
  Direction solve(const VectorXd& rp, const VectorXd& rd, const VectorXd& r_xw, const VectorXd& r_ys) const {
    const VectorXd t = (r_ys - it_.y.cwiseProduct(rp)).cwiseQuotient(it_.s);
    const VectorXd rhs = rd + r_xw.cwiseQuotient(it_.x) - lp_.A.transpose() * t;
    Direction d;
    d.dx = ldlt_.solve(rhs);
    if (!d.dx.allFinite()) throw NumericalFailure("non-finite Newton direction");
    d.dy = it_.y.cwiseQuotient(it_.s).cwiseProduct(lp_.A * d.dx + r_ys.cwiseQuotient(it_.y) - rp);
    d.ds = (r_ys - it_.s.cwiseProduct(d.dy)).cwiseQuotient(it_.y);
    d.dw = (r_xw - it_.w.cwiseProduct(d.dx)).cwiseQuotient(it_.x);
    return d;
  }

 private:
  const LinearProgramd& lp_;
  const Iterate& it_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
};

Iterate initial_point(const LinearProgramd& lp) {
  Iterate it;
  it.x = VectorXd::Ones(lp.n());
  it.s = (lp.b - lp.A * it.x).cwiseMax(1.0);
  it.y = VectorXd::Ones(lp.m());
  it.w = (lp.A.transpose() * it.y - lp.c).cwiseMax(1.0);
  return it;
}

std::optional<PrimalDualPointd> try_rounding(const LinearProgramd& lp, const VectorXd& x, SupportPair& sp) {
  sp = candidate_supports(lp, x);
  auto rounded = round_primal_dual(lp, sp);
  if (auto* pt = std::get_if<PrimalDualPointd>(&rounded); pt && verify_candidate(lp, *pt)) return *pt;
  return std::nullopt;
}

}  // namespace

SolveResult solve(const LinearProgramd& lp, const SolverOptions& opts) {
  opts.check();
  if (const auto problems = validate(lp); !problems.empty())
    throw std::invalid_argument("invalid linear program: " + problems.front());

  const Index n = lp.n();
  const Index m = lp.m();
  const double dim = static_cast<double>(n + m);
  const int period = opts.effective_period(n);
  const double primal_tol = 1e-10 * (1.0 + lp.b.norm());
  const double dual_tol = 1e-10 * (1.0 + lp.c.norm());

  SolveResult result;
  Iterate it = initial_point(lp);

  auto finish_exact = [&](const PrimalDualPointd& pt, const SupportPair& sp) {
    result.status = SolveStatus::Optimal;
    result.point = pt;
    result.terminated_exactly = true;
    result.supports = sp;
    return result;
  };

  for (int k = 0;; ++k) {
    const VectorXd rp = lp.b - lp.A * it.x - it.s;
    const VectorXd rd = lp.c - lp.A.transpose() * it.y + it.w;
    const double comp = it.x.dot(it.w) + it.y.dot(it.s);
    const double mu = comp / dim;
    const double primal_res = rp.norm();
    const double dual_res = rd.norm();
    result.gap_history.push_back(comp);
    result.iterations = k;

    if (!it.x.allFinite() || !it.y.allFinite() || !it.s.allFinite() || !it.w.allFinite()) {
      result.status = SolveStatus::NumericalFailure;
      return result;
    }

    if (opts.attempt_termination && k > 0 && k % period == 0) {
      SupportPair sp;
      if (auto pt = try_rounding(lp, it.x, sp)) return finish_exact(*pt, sp);
    }

    const double obj = lp.c.dot(it.x);
    const double gap = it.y.dot(lp.b) - obj;
    const double gap_scale = opts.gap_tolerance * (1.0 + std::abs(obj));
    if (primal_res <= primal_tol && dual_res <= dual_tol && comp <= gap_scale && std::abs(gap) <= gap_scale) {
      if (opts.attempt_termination) {
        SupportPair sp;
        if (auto pt = try_rounding(lp, it.x, sp)) return finish_exact(*pt, sp);
      }
      result.status = SolveStatus::Optimal;
      result.point = PrimalDualPointd{it.x, it.y};
      return result;
    }

    // Divergence heuristics: an exploding primal iterate with shrinking
    // primal residual is a ray; an exploding dual iterate is a dual ray.
    if ((obj > kDivergence || it.x.lpNorm<Eigen::Infinity>() > kDivergence) && primal_res <= 1e-6 * (1.0 + it.x.norm())) {
      result.status = SolveStatus::Unbounded;
      return result;
    }
    if ((lp.b.dot(it.y) < -kDivergence || it.y.lpNorm<Eigen::Infinity>() > kDivergence) &&
        dual_res <= 1e-6 * (1.0 + it.y.norm())) {
      result.status = SolveStatus::Infeasible;
      return result;
    }
    if (mu < 1e-14 * (1.0 + std::abs(obj))) {
      if (primal_res > 1e-6 * (1.0 + lp.b.norm())) {
        result.status = SolveStatus::Infeasible;
        return result;
      }
      if (dual_res > 1e-6 * (1.0 + lp.c.norm())) {
        result.status = SolveStatus::Unbounded;
        return result;
      }
    }

    if (k >= opts.max_iterations) {
      result.status = SolveStatus::IterationLimit;
      return result;
    }

    try {
      const NewtonSystem newton(lp, it);

      // Predictor: pure Newton step towards complementarity.
      const VectorXd xw = it.x.cwiseProduct(it.w);
      const VectorXd ys = it.y.cwiseProduct(it.s);
      const Direction aff = newton.solve(rp, rd, -xw, -ys);
      const double ap_aff = std::min(max_step(it.x, aff.dx), max_step(it.s, aff.ds));
      const double ad_aff = std::min(max_step(it.y, aff.dy), max_step(it.w, aff.dw));
      const double mu_aff = ((it.x + ap_aff * aff.dx).dot(it.w + ad_aff * aff.dw) +
                             (it.y + ad_aff * aff.dy).dot(it.s + ap_aff * aff.ds)) /
                            dim;
      const double centering = std::pow(std::max(0.0, mu_aff) / mu, 3);

      // Corrector: recentre and compensate the second-order term.
      const VectorXd r_xw = VectorXd::Constant(n, centering * mu) - xw - aff.dx.cwiseProduct(aff.dw);
      const VectorXd r_ys = VectorXd::Constant(m, centering * mu) - ys - aff.dy.cwiseProduct(aff.ds);
      const Direction d = newton.solve(rp, rd, r_xw, r_ys);

      const double ap = std::min(1.0, kStepFraction * std::min(max_step(it.x, d.dx), max_step(it.s, d.ds)));
      const double ad = std::min(1.0, kStepFraction * std::min(max_step(it.y, d.dy), max_step(it.w, d.dw)));
      it.x += ap * d.dx;
      it.s += ap * d.ds;
      it.y += ad * d.dy;
      it.w += ad * d.dw;
    } catch (const NumericalFailure&) {
      result.status = SolveStatus::NumericalFailure;
      return result;
    }
  }
}

}  // namespace smoothlp
