#include "smoothlp/oracle.hpp"

#include "smoothlp/linalg.hpp"
#include "smoothlp/random.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace smoothlp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Visits every k-subset of {0..total-1} in lexicographic order.
template <typename Visit>
void for_each_subset(int total, int k, Visit&& visit) {
  if (k > total) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == total - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Constraint k < n is x_k >= 0 (normal e_k); constraint k >= n is row k - n of A x <= b.
Eigen::RowVectorXd constraint_normal(const LinearProgramd& lp, int k) {
  const Index n = lp.n();
  if (k < n) {
    Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(n);
    e(k) = 1.0;
    return e;
  }
  return lp.A.row(k - n);
}

struct Vertex {
  VectorXd x;
  double objective;
  std::vector<std::vector<int>> bases;  // constraint subsets producing this vertex
};

bool same_point(const VectorXd& a, const VectorXd& b) {
  return (a - b).lpNorm<Eigen::Infinity>() <= 1e-9 * (1.0 + a.lpNorm<Eigen::Infinity>());
}

bool improving_ray_exists(const LinearProgramd& lp) {
  const int n = static_cast<int>(lp.n());
  const int total = static_cast<int>(lp.m() + lp.n());
  const double tol = 1e-10 * (1.0 + lp.A.norm());
  const double obj_tol = 1e-10 * (1.0 + lp.c.norm());

  auto improves = [&](const VectorXd& d) {
    if (d.minCoeff() < -tol) return false;
    if ((lp.A * d).maxCoeff() > tol) return false;
    return lp.c.dot(d) > obj_tol;
  };

  // Extreme rays of the recession cone {d >= 0, A d <= 0} are the
  // one-dimensional solution sets of n - 1 tight homogeneous constraints.
  bool found = false;
  for_each_subset(total, n - 1, [&](const std::vector<int>& subset) {
    if (found) return;
    VectorXd d;
    if (n == 1) {
      d = VectorXd::Ones(1);
    } else {
      MatrixXd H(n - 1, n);
      for (int r = 0; r < n - 1; ++r) H.row(r) = constraint_normal(lp, subset[static_cast<std::size_t>(r)]);
      Eigen::FullPivLU<MatrixXd> lu(H);
      lu.setThreshold(1e-12);
      if (lu.rank() != n - 1) return;
      d = lu.kernel().col(0).normalized();
    }
    if (improves(d) || improves(-d)) found = true;
  });
  return found;
}

}  // namespace

bool within_oracle_budget(const LinearProgramd& lp) {
  return lp.n() <= kOracleMaxColumns && lp.m() <= kOracleMaxRows;
}

OracleResult brute_force_solve(const LinearProgramd& lp) {
  if (!within_oracle_budget(lp)) throw BudgetExceeded("vertex enumeration limited to n <= 8 and m <= 16");
  if (const auto problems = validate(lp); !problems.empty())
    throw std::invalid_argument("invalid linear program: " + problems.front());

  const int n = static_cast<int>(lp.n());
  const int m = static_cast<int>(lp.m());
  const double tol = feasibility_tolerance(lp);

  std::vector<Vertex> vertices;
  for_each_subset(m + n, n, [&](const std::vector<int>& subset) {
    MatrixXd M(n, n);
    VectorXd rhs(n);
    for (int r = 0; r < n; ++r) {
      const int k = subset[static_cast<std::size_t>(r)];
      M.row(r) = constraint_normal(lp, k);
      rhs(r) = k < n ? 0.0 : lp.b(k - n);
    }
    VectorXd x;
    try {
      x = solve_square(M, rhs);
    } catch (const SingularMatrix&) {
      return;
    }
    if (!primal_feasible(lp, x, tol)) return;
    for (auto& v : vertices) {
      if (same_point(v.x, x)) {
        v.bases.push_back(subset);
        return;
      }
    }
    vertices.push_back({x, lp.c.dot(x), {subset}});
  });

  OracleResult out;
  for (const auto& v : vertices) out.vertices.push_back(v.x);
  if (vertices.empty()) {
    out.status = SolveStatus::Infeasible;
    return out;
  }
  if (improving_ray_exists(lp)) {
    out.status = SolveStatus::Unbounded;
    return out;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i].objective > vertices[best].objective) best = i;
  const Vertex& opt = vertices[best];
  out.objective = opt.objective;

  bool tie = false;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (i != best && opt.objective - vertices[i].objective <= 1e-9 * (1.0 + std::abs(opt.objective))) tie = true;

  const VectorXd slack = lp.b - lp.A * opt.x;
  for (int i = 0; i < n; ++i)
    if (opt.x(i) <= tol) ++out.tight_count;
  for (int j = 0; j < m; ++j)
    if (slack(j) <= tol) ++out.tight_count;

  // Dual: y_j = 0 off the tight rows and (y A)_i = c_i on the coordinates left free.
  for (const auto& basis : opt.bases) {
    SupportPair trial;
    std::vector<bool> fixed(static_cast<std::size_t>(n), false);
    for (int k : basis) {
      if (k < n)
        fixed[static_cast<std::size_t>(k)] = true;
      else
        trial.V.push_back(k - n);
    }
    for (int i = 0; i < n; ++i)
      if (!fixed[static_cast<std::size_t>(i)]) trial.U.push_back(i);
    MatrixXd block(static_cast<Index>(trial.V.size()), static_cast<Index>(trial.U.size()));
    VectorXd c_u(static_cast<Index>(trial.U.size()));
    for (std::size_t r = 0; r < trial.V.size(); ++r)
      for (std::size_t q = 0; q < trial.U.size(); ++q) block(Index(r), Index(q)) = lp.A(trial.V[r], trial.U[q]);
    for (std::size_t q = 0; q < trial.U.size(); ++q) c_u(Index(q)) = lp.c(trial.U[q]);
    VectorXd y_v;
    try {
      y_v = solve_square(block.transpose(), c_u);
    } catch (const SingularMatrix&) {
      continue;
    }
    VectorXd y = VectorXd::Zero(m);
    for (std::size_t r = 0; r < trial.V.size(); ++r) y(trial.V[r]) = y_v(Index(r));
    PrimalDualPointd pt{opt.x, y};
    if (!verify_candidate(lp, pt)) continue;

    // Report exact zeros off the support.
    for (int i = 0; i < n; ++i)
      if (fixed[static_cast<std::size_t>(i)]) pt.x(i) = 0.0;

    const VectorXd dual_slack = lp.A.transpose() * y - lp.c;
    bool strictly_complementary = true;
    for (std::size_t r = 0; r < trial.V.size(); ++r)
      if (y_v(Index(r)) <= kSupportTolerance) strictly_complementary = false;
    for (int i = 0; i < n; ++i)
      if (fixed[static_cast<std::size_t>(i)] && dual_slack(i) <= kSupportTolerance) strictly_complementary = false;

    out.status = SolveStatus::Optimal;
    out.point = pt;
    out.supports = support_of(pt);
    out.unique = !tie && out.tight_count == n && opt.bases.size() == 1 && strictly_complementary;
    return out;
  }

  out.status = SolveStatus::NumericalFailure;
  return out;
}

std::vector<VectorXd> feasible_probes(const LinearProgramd& lp, const OracleResult& oracle, int count,
                                      std::uint64_t seed, double max_gap) {
  if (oracle.status != SolveStatus::Optimal || !oracle.point)
    throw std::invalid_argument("feasible_probes requires an optimal oracle result");
  const VectorXd& x_opt = oracle.point->x;
  const double opt_value = lp.c.dot(x_opt);
  CounterStream rng(seed, 0);

  std::vector<VectorXd> probes;
  probes.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int p = 0; p < count; ++p) {
    VectorXd anchor = VectorXd::Zero(lp.n());
    double total = 0.0;
    for (const auto& v : oracle.vertices) {
      const double w = -std::log(rng.uniform());
      anchor += w * v;
      total += w;
    }
    anchor /= total;

    double t_max = 1.0;
    const double anchor_gap = opt_value - lp.c.dot(anchor);
    if (std::isfinite(max_gap) && anchor_gap > 0) t_max = std::min(1.0, (1.0 - 1e-6) * max_gap / anchor_gap);
    const double t = t_max * std::pow(10.0, -8.0 * rng.uniform());
    probes.push_back((1.0 - t) * x_opt + t * anchor);
  }
  return probes;
}

DeltaProbeResult delta_probe(const LinearProgramd& lp, const OracleResult& oracle, int num_probes,
                             std::uint64_t rng_seed) {
  if (oracle.status != SolveStatus::Optimal || !oracle.unique || !oracle.point || !oracle.supports)
    throw std::invalid_argument("delta_probe requires a unique optimal oracle result");
  DeltaProbeResult out;
  out.certified_lb = geometric_quantities(lp, *oracle.point, *oracle.supports).delta_lb;

  const double opt_value = lp.c.dot(oracle.point->x);
  for (const auto& x : feasible_probes(lp, oracle, num_probes, rng_seed, std::numeric_limits<double>::infinity())) {
    const double gap = opt_value - lp.c.dot(x);
    if (candidate_supports(lp, x) == *oracle.supports) {
      out.max_succeeding_gap = std::max(out.max_succeeding_gap, gap);
    } else if (!out.min_failing_gap || gap < *out.min_failing_gap) {
      out.min_failing_gap = gap;
    }
  }
  out.consistent = !out.min_failing_gap || *out.min_failing_gap >= out.certified_lb - 1e-10;
  return out;
}

}  // namespace smoothlp
