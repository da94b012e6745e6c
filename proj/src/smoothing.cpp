#include "smoothlp/smoothing.hpp"

#include "smoothlp/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace smoothlp {

void PerturbationSpec::check() const {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive and finite");
}

bool PerturbationSpec::outside_complexity_regime(Index m, Index n) const {
  return sigma > 1.0 / std::sqrt(static_cast<double>(m) * static_cast<double>(n));
}

LinearProgramd normalize_base(const LinearProgramd& base) {
  const double scale = std::max({1.0, base.A.norm(), base.b.norm(), base.c.norm()});
  return {base.A / scale, base.b / scale, base.c / scale};
}

bool is_normalized(const LinearProgramd& lp) {
  constexpr double slack = 1.0 + 1e-12;
  return spectral_norm(lp.A) <= slack && lp.b.norm() <= slack && lp.c.norm() <= slack;
}

LinearProgramd perturb(const LinearProgramd& base, const PerturbationSpec& spec, std::uint64_t trial_index) {
  spec.check();
  const Index m = base.m();
  const Index n = base.n();
  auto noise = [&](Index entry) {
    return spec.sigma * normal_quantile(bits_to_open_unit(
                            random_bits(spec.master_seed, trial_index, static_cast<std::uint64_t>(entry))));
  };

  LinearProgramd out = base;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) out.A(i, j) += noise(i + j * m);
  for (Index i = 0; i < m; ++i) out.b(i) += noise(m * n + i);
  for (Index i = 0; i < n; ++i) out.c(i) += noise(m * n + m + i);
  return out;
}

BoundCheck gaussian_ratio_bound_check(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                      const Eigen::VectorXd& center, double sigma) {
  if (x.size() != y.size() || x.size() != center.size()) throw DimensionMismatch("ratio check: dimensions differ");
  if (!(sigma > 0)) throw HypothesisViolation("sigma must be positive");
  if (center.norm() > 1.0) throw HypothesisViolation("center must have norm at most 1");
  const double eps = (x - y).norm();
  if (eps > 1.0) throw HypothesisViolation("points must be within distance 1");

  const double var = sigma * sigma;
  const double log_ratio = -((y - center).squaredNorm() - (x - center).squaredNorm()) / (2.0 * var);
  const double log_bound = -eps * (x.norm() + 2.0) / var;
  return {std::exp(log_ratio), std::exp(log_bound), log_ratio >= log_bound - 1e-12};
}

double conditional_tail_probability(double t, double eps, double sigma, double mean) {
  const double z_lo = (t - mean) / sigma;
  const double z_hi = (t + eps - mean) / sigma;
  return -std::expm1(log_normal_sf(z_hi) - log_normal_sf(z_lo));
}

namespace {
void check_tail_hypotheses(double t, double eps, double tau, double sigma, double mean) {
  if (!(sigma > 0) || sigma * sigma > 1.0) throw HypothesisViolation("need 0 < sigma^2 <= 1");
  if (std::abs(mean) > 1.0) throw HypothesisViolation("need |mean| <= 1");
  if (!(eps >= 0)) throw HypothesisViolation("need eps >= 0");
  if (!(tau >= 1)) throw HypothesisViolation("need tau >= 1");
  if (!(t <= tau)) throw HypothesisViolation("need t <= tau");
}
}  // namespace

BoundCheck gaussian_tail_bound_check(double t, double eps, double tau, double sigma, double mean) {
  check_tail_hypotheses(t, eps, tau, sigma, mean);
  const double var = sigma * sigma;
  const double prob = conditional_tail_probability(t, eps, sigma, mean);
  const double bound = eps * tau / var * std::exp(eps * (tau + 3.0) / var);
  return {prob, bound, prob <= bound + 1e-12};
}

double gaussian_tail_window_bound(double eps, double tau, double sigma) {
  return eps * tau / (sigma * sigma) * std::exp((tau + 3.0) / tau);
}

namespace {
std::pair<double, double> mean_and_stderr(std::span<const double> values) {
  const double count = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= count;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (count - 1.0) / count)};
}
}  // namespace

LogExpectationCheck tail_to_log_expectation_check(std::span<const double> samples, double alpha, double k) {
  if (!(k > 0) || !(alpha > 0) || std::log(alpha) / k < 1.0) throw HypothesisViolation("need log(alpha)/k >= 1");
  if (samples.empty()) throw std::invalid_argument("no samples");
  std::vector<double> values;
  values.reserve(samples.size());
  for (double x : samples) {
    if (!(x >= 0)) throw std::invalid_argument("samples must be non-negative");
    values.push_back(std::max(1.0, -std::log(x)));
  }
  const auto [mean, se] = mean_and_stderr(values);
  const double bound = (1.0 + std::log(alpha)) / k;
  return {mean, se, bound, mean - 3.0 * se <= bound};
}

LogExpectationCheck norm_expectation_check(Index n, Index m, double sigma, const Eigen::MatrixXd& base,
                                           int num_trials, std::uint64_t seed) {
  if (!(sigma > 0) || sigma * sigma > 1.0) throw HypothesisViolation("need 0 < sigma^2 <= 1");
  if (base.rows() != m || base.cols() != n) throw DimensionMismatch("base must be m x n");
  if (spectral_norm(base) > 1.0 + 1e-12) throw HypothesisViolation("base must have norm at most 1");
  if (num_trials < 1) throw std::invalid_argument("need at least one trial");

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(num_trials));
  for (int t = 0; t < num_trials; ++t) {
    Eigen::MatrixXd A = base;
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < m; ++i)
        A(i, j) += sigma * normal_quantile(bits_to_open_unit(random_bits(seed, std::uint64_t(t), std::uint64_t(i + j * m))));
    values.push_back(std::log(spectral_norm(A) + 3.0));
  }
  const auto [mean, se] = mean_and_stderr(values);
  const double bound = std::log((std::sqrt(double(n)) + std::sqrt(double(m))) * sigma + 4.0);
  return {mean, se, bound, mean - 3.0 * se <= bound};
}

SweepSummary sweep_ratio_lemma(long long samples, std::uint64_t seed) {
  SweepSummary out;
  CounterStream rng(seed, 1);
  auto random_direction = [&rng](Index d) {
    Eigen::VectorXd v(d);
    for (Index i = 0; i < d; ++i) v(i) = rng.normal();
    return Eigen::VectorXd(v.normalized());
  };
  for (long long k = 0; k < samples; ++k) {
    const Index dim = 1 + static_cast<Index>(rng() % 5);
    const Eigen::VectorXd center = random_direction(dim) * rng.uniform();
    const Eigen::VectorXd x = random_direction(dim) * rng.uniform(0.0, 5.0);
    const Eigen::VectorXd y = x + random_direction(dim) * rng.uniform();
    const double sigma = rng.uniform(0.05, 2.0);
    const BoundCheck c = gaussian_ratio_bound_check(x, y, center, sigma);
    ++out.checked;
    if (!c.holds) ++out.failures;
    // Lower bound on a ratio: report bound / value.
    out.worst_ratio = std::max(out.worst_ratio, c.bound / c.value);
  }
  return out;
}

SweepSummary sweep_tail_lemma(long long samples, std::uint64_t seed) {
  SweepSummary out;
  CounterStream rng(seed, 2);
  for (long long k = 0; k < samples; ++k) {
    const double mean = rng.uniform(-1.0, 1.0);
    const double sigma = std::sqrt(rng.uniform(1e-3, 1.0));
    const double tau = rng.uniform(1.0, 10.0);
    const double t = rng.uniform(-10.0, tau);
    const double eps = rng.uniform() * sigma * sigma / tau;
    const BoundCheck c = gaussian_tail_bound_check(t, eps, tau, sigma, mean);
    ++out.checked;
    if (!c.holds) ++out.failures;
    if (c.value > gaussian_tail_window_bound(eps, tau, sigma) + 1e-12) ++out.window_failures;
    if (c.bound > 0) out.worst_ratio = std::max(out.worst_ratio, c.value / c.bound);
  }
  return out;
}

}  // namespace smoothlp
