#pragma once

// Exact reference solver by vertex enumeration, for small instances only.

#include "smoothlp/lp.hpp"
#include "smoothlp/termination.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace smoothlp {

inline constexpr Index kOracleMaxColumns = 8;
inline constexpr Index kOracleMaxRows = 16;

struct BudgetExceeded : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OracleResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<PrimalDualPointd> point;
  std::optional<SupportPair> supports;
  /// Unique primal/dual optimum with exactly n tight constraints.
  bool unique = false;
  /// Number of tight primal inequalities at the optimal vertex.
  int tight_count = 0;
  double objective = 0.0;
  /// Distinct feasible vertices of {x >= 0, A x <= b}.
  std::vector<Eigen::VectorXd> vertices;
};

bool within_oracle_budget(const LinearProgramd& lp);

OracleResult brute_force_solve(const LinearProgramd& lp);

/// Feasible points x = (1 - t) x* + t v, where v is a random convex
/// combination of feasible vertices and t is log-uniform over eight decades
/// below t_max. t_max is chosen so every probe has c x* - c x < max_gap.
std::vector<Eigen::VectorXd> feasible_probes(const LinearProgramd& lp, const OracleResult& oracle, int count,
                                             std::uint64_t seed, double max_gap);

struct DeltaProbeResult {
  std::optional<double> min_failing_gap;
  double max_succeeding_gap = 0.0;
  double certified_lb = 0.0;
  /// No probe below certified_lb failed to recover the optimal supports.
  bool consistent = true;
};

DeltaProbeResult delta_probe(const LinearProgramd& lp, const OracleResult& oracle, int num_probes,
                             std::uint64_t rng_seed);

}  // namespace smoothlp
