#pragma once

// Gaussian perturbation of LP instances, plus numeric checkers for the
// elementary facts about Gaussians that the smoothed bounds rest on.

#include "smoothlp/lp.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace smoothlp {

struct HypothesisViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PerturbationSpec {
  double sigma = 0.0;
  std::uint64_t master_seed = 0;

  void check() const;
  /// True outside the regime sigma <= 1/sqrt(m n) of the complexity bound; advisory only.
  bool outside_complexity_regime(Index m, Index n) const;
};

/// Divides A, b, c by max(1, ||A||_F, ||b||, ||c||) so all three have norm <= 1.
LinearProgramd normalize_base(const LinearProgramd& base);

/// True when ||A|| (spectral), ||b||, ||c|| are all at most 1 (up to rounding).
bool is_normalized(const LinearProgramd& lp);

/// Adds i.i.d. N(0, sigma^2) noise to every entry of A, b and c. The variate
/// for entry e of trial t depends only on (master_seed, t, e); entries are
/// numbered A column-major, then b, then c.
LinearProgramd perturb(const LinearProgramd& base, const PerturbationSpec& spec, std::uint64_t trial_index);

struct BoundCheck {
  double value;  // the probability / ratio / mean being bounded
  double bound;
  bool holds;
};

/// Density ratio mu(y)/mu(x) for a Gaussian of variance sigma^2 centred at
/// `center` (||center|| <= 1), against exp(-eps (||x|| + 2) / sigma^2) with
/// eps = ||x - y|| <= 1. Both sides are compared in log space; the returned
/// value and bound are exponentiated.
BoundCheck gaussian_ratio_bound_check(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                      const Eigen::VectorXd& center, double sigma);

/// P[X <= t + eps | X >= t] for X ~ N(mean, sigma^2) against
/// (eps tau / sigma^2) exp(eps (tau + 3) / sigma^2).
/// Requires |mean| <= 1, sigma^2 <= 1, eps >= 0, tau >= 1, t <= tau.
BoundCheck gaussian_tail_bound_check(double t, double eps, double tau, double sigma, double mean);

/// Bound on the same conditional probability obtained by running the
/// density-ratio argument over the full window [t, t + sigma^2/tau]:
/// (eps tau / sigma^2) exp((tau + 3) / tau). Holds under the same hypotheses.
double gaussian_tail_window_bound(double eps, double tau, double sigma);

/// Conditional tail probability P[X <= t + eps | X >= t], X ~ N(mean, sigma^2).
double conditional_tail_probability(double t, double eps, double sigma, double mean);

struct LogExpectationCheck {
  double empirical_mean;
  double standard_error;
  double bound;
  bool holds;
};

/// Mean of max(1, log(1/x)) over `samples` against (1 + log alpha)/k, for a
/// variable with P[x <= eps] <= alpha eps^k. Requires log(alpha)/k >= 1.
LogExpectationCheck tail_to_log_expectation_check(std::span<const double> samples, double alpha, double k);

/// Monte Carlo E[log(||A|| + 3)] for A = base + sigma G against
/// log((sqrt(n) + sqrt(m)) sigma + 4). `base` is m x n with ||base|| <= 1.
LogExpectationCheck norm_expectation_check(Index n, Index m, double sigma, const Eigen::MatrixXd& base,
                                           int num_trials, std::uint64_t seed);

struct SweepSummary {
  long long checked = 0;
  long long failures = 0;
  /// Failures of gaussian_tail_window_bound (tail sweep only).
  long long window_failures = 0;
  /// Largest value / bound ratio seen.
  double worst_ratio = 0.0;
};

/// Random in-hypothesis configurations for gaussian_ratio_bound_check:
/// dimension 1..5, ||center|| <= 1, sigma in [0.05, 2], ||x|| up to 5, ||x - y|| <= 1.
SweepSummary sweep_ratio_lemma(long long samples, std::uint64_t seed);

/// Random in-hypothesis configurations for gaussian_tail_bound_check:
/// |mean| <= 1, sigma^2 in [1e-3, 1], tau in [1, 10], t in [-10, tau],
/// eps in [0, sigma^2 / tau) (beyond that the bound exceeds 1).
SweepSummary sweep_tail_lemma(long long samples, std::uint64_t seed);

}  // namespace smoothlp
