#pragma once

#include "smoothlp/lp.hpp"
#include "smoothlp/termination.hpp"

#include <optional>
#include <vector>

namespace smoothlp {

struct SolverOptions {
  double gap_tolerance = 1e-10;
  int max_iterations = 500;
  /// Iterations between rounding attempts; 0 selects ceil(sqrt(n)).
  int termination_period = 0;
  bool attempt_termination = true;

  int effective_period(Index n) const;
  void check() const;
};

struct SolveResult {
  SolveStatus status = SolveStatus::NumericalFailure;
  std::optional<PrimalDualPointd> point;
  /// Complementarity gap x.w + y.s at the start of each iteration and after the last step.
  std::vector<double> gap_history;
  int iterations = 0;
  bool terminated_exactly = false;
  std::optional<SupportPair> supports;
};

/// Infeasible-start primal-dual path following with Mehrotra
/// predictor-corrector steps, attempting to round the current primal
/// iterate to the exact optimum every `termination_period` iterations.
SolveResult solve(const LinearProgramd& lp, const SolverOptions& opts = {});

}  // namespace smoothlp
