// Properties checked over a corpus of random unique-optimal instances.

#include "corpus.hpp"
#include "smoothlp/ipm.hpp"
#include "smoothlp/linalg.hpp"
#include "smoothlp/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <variant>

using namespace smoothlp;

namespace {

const std::vector<corpus::Entry>& shared_corpus() {
  static const std::vector<corpus::Entry> c = corpus::build(16, 777);
  return c;
}

std::vector<Index> random_subset(CounterStream& rng, Index size) {
  std::vector<Index> all(static_cast<std::size_t>(size));
  std::iota(all.begin(), all.end(), Index(0));
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(1 + rng() % static_cast<std::uint64_t>(size));
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

TEST(CorpusProperties, SolverAgreesWithOracle) {
  std::vector<double> ratios;
  for (const auto& e : shared_corpus()) {
    const SolveResult r = solve(e.lp);
    ASSERT_EQ(r.status, SolveStatus::Optimal);
    EXPECT_LE(std::abs(e.lp.c.dot(r.point->x) - e.oracle.objective), 1e-7 * (1 + std::abs(e.oracle.objective)));
    if (r.terminated_exactly) {
      EXPECT_TRUE(verify_candidate(e.lp, *r.point));
      EXPECT_EQ(*r.supports, *e.oracle.supports);
    }
    for (std::size_t k = 1; k < r.gap_history.size(); ++k)
      if (r.gap_history[k - 1] > 0) ratios.push_back(r.gap_history[k] / r.gap_history[k - 1]);
  }
  ASSERT_FALSE(ratios.empty());
  std::nth_element(ratios.begin(), ratios.begin() + long(ratios.size() / 2), ratios.end());
  const double median = ratios[ratios.size() / 2];
  // Reported rather than asserted.
  std::printf("median per-iteration gap ratio: %.3g over %zu steps\n", median, ratios.size());
}

TEST(CorpusProperties, SupportsMatchTightConstraints) {
  for (const auto& e : shared_corpus()) {
    const auto& pt = *e.oracle.point;
    const Eigen::VectorXd slack = e.lp.b - e.lp.A * pt.x;
    const Eigen::VectorXd reduced = (pt.y.transpose() * e.lp.A).transpose() - e.lp.c;
    std::vector<Index> U_tight, V_tight;
    for (Index i = 0; i < e.lp.n(); ++i)
      if (std::abs(reduced(i)) <= 1e-8) U_tight.push_back(i);
    for (Index j = 0; j < e.lp.m(); ++j)
      if (std::abs(slack(j)) <= 1e-8) V_tight.push_back(j);
    EXPECT_EQ(U_tight, e.oracle.supports->U);
    EXPECT_EQ(V_tight, e.oracle.supports->V);
    EXPECT_EQ(support_of(pt), *e.oracle.supports);
    EXPECT_EQ(e.oracle.tight_count, e.lp.n());
  }
}

TEST(CorpusProperties, RoundingIsIdempotentAtTheOptimum) {
  for (const auto& e : shared_corpus()) {
    const SupportPair sp = candidate_supports(e.lp, e.oracle.point->x);
    EXPECT_EQ(sp, *e.oracle.supports);
    const auto r = round_primal_dual(e.lp, sp);
    ASSERT_TRUE(std::holds_alternative<PrimalDualPointd>(r));
    EXPECT_LE((std::get<PrimalDualPointd>(r).x - e.oracle.point->x).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(CorpusProperties, WeakDualityAgainstEveryVertex) {
  for (const auto& e : shared_corpus()) {
    const double dual_value = e.oracle.point->y.dot(e.lp.b);
    for (const auto& v : e.oracle.vertices) {
      const auto r = residuals(e.lp, PrimalDualPointd{v, e.oracle.point->y});
      EXPECT_GE(r.duality_gap, -1e-8);
      EXPECT_LE(e.lp.c.dot(v), dual_value + 1e-8);
    }
  }
}

TEST(CorpusProperties, NoSupportMistakeBelowCertifiedThreshold) {
  const auto& c = shared_corpus();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const DeltaProbeResult r = delta_probe(c[i].lp, c[i].oracle, 100, 31 + i);
    EXPECT_TRUE(r.consistent) << "instance " << i;
    for (const auto& x : feasible_probes(c[i].lp, c[i].oracle, 100, 91 + i, c[i].geom.delta_lb))
      ASSERT_EQ(candidate_supports(c[i].lp, x), *c[i].oracle.supports) << "instance " << i;
  }
}

TEST(CorpusProperties, ClosenessInequalities) {
  const auto& c = shared_corpus();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (const auto& x : feasible_probes(c[i].lp, c[i].oracle, 200, 17 + i, std::numeric_limits<double>::infinity()))
      ASSERT_TRUE(check_closeness_lemmas(c[i].lp, *c[i].oracle.point, *c[i].oracle.supports, x).all_hold())
          << "instance " << i;
}

TEST(NormProperties, SubmatrixNormIsBounded) {
  CounterStream rng(55, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::MatrixXd A(1 + Index(rng() % 6), 1 + Index(rng() % 6));
    for (Index k = 0; k < A.size(); ++k) A.data()[k] = rng.normal();
    const auto V = random_subset(rng, A.rows());
    const auto U = random_subset(rng, A.cols());
    ASSERT_LE(spectral_norm(detail::submatrix(Eigen::MatrixXd(A), V, U)), spectral_norm(A) + 1e-8);
  }
}

TEST(LinalgProperties, DistanceToVectorsInSpan) {
  CounterStream rng(56, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index d = 2 + Index(rng() % 5);
    const Index r = 1 + Index(rng() % std::uint64_t(d));
    Eigen::MatrixXd B(d, r);
    Eigen::VectorXd w(r);
    for (Index k = 0; k < B.size(); ++k) B.data()[k] = rng.normal();
    for (Index k = 0; k < r; ++k) w(k) = rng.normal();
    const Eigen::VectorXd u = B * w;
    ASSERT_LE(distance_to_span(u, B), 1e-8 * (1 + u.norm()));
  }
}

TEST(LinalgProperties, DistanceInvariantUnderPermutationAndScaling) {
  CounterStream rng(57, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index d = 2 + Index(rng() % 5);
    const Index r = 1 + Index(rng() % std::uint64_t(d - 1));
    Eigen::MatrixXd B(d, r);
    Eigen::VectorXd u(d);
    for (Index k = 0; k < B.size(); ++k) B.data()[k] = rng.normal();
    for (Index k = 0; k < d; ++k) u(k) = rng.normal();
    std::vector<Index> perm(static_cast<std::size_t>(r));
    std::iota(perm.begin(), perm.end(), Index(0));
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXd C(d, r);
    for (Index k = 0; k < r; ++k) {
      const double s = (rng() % 2 ? 1.0 : -1.0) * std::pow(10.0, rng.uniform(-3, 3));
      C.col(k) = s * B.col(perm[std::size_t(k)]);
    }
    const double a = distance_to_span(u, B);
    ASSERT_NEAR(distance_to_span(u, C), a, 1e-9 * std::max(a, 1e-300) + 1e-12) << "trial " << trial;
  }
}

TEST(LinalgProperties, SolveSquareReproducesRightHandSide) {
  CounterStream rng(58, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index k = 1 + Index(rng() % 8);
    Eigen::MatrixXd M(k, k);
    for (Index i = 0; i < M.size(); ++i) M.data()[i] = rng.normal();
    M += 3.0 * std::sqrt(double(k)) * Eigen::MatrixXd::Identity(k, k);  // well conditioned
    Eigen::VectorXd v(k);
    for (Index i = 0; i < k; ++i) v(i) = rng.normal();
    const Eigen::VectorXd x = solve_square(M, v);
    ASSERT_LE((M * x - v).norm(), 1e-12 * (1 + v.norm())) << "trial " << trial;
  }
}

TEST(LpProperties, WeakDualityForFeasiblePairs) {
  CounterStream rng(59, 0);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Index n = 1 + Index(rng() % 3);
    const Index m = n + Index(rng() % 3);
    LinearProgramd lp{Eigen::MatrixXd(m, n), Eigen::VectorXd(m), Eigen::VectorXd(n)};
    for (Index k = 0; k < lp.A.size(); ++k) lp.A.data()[k] = rng.uniform(0.1, 1);
    for (Index k = 0; k < m; ++k) lp.b(k) = rng.uniform(0.5, 2);
    for (Index k = 0; k < n; ++k) lp.c(k) = rng.uniform(-1, 1);
    Eigen::VectorXd x(n), y(m);
    for (Index k = 0; k < n; ++k) x(k) = rng.uniform(0, 0.5 / double(n));
    for (Index k = 0; k < m; ++k) y(k) = rng.uniform(0, 20);
    if (!primal_feasible(lp, x, 1e-9) || !dual_feasible(lp, y, 1e-9)) continue;
    ++checked;
    ASSERT_GE(residuals(lp, PrimalDualPointd{x, y}).duality_gap, -1e-8);
  }
  EXPECT_GT(checked, 100);
}
