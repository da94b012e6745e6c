#pragma once

// Monte Carlo experiments: perturb -> solve -> round -> measure.

#include "smoothlp/ipm.hpp"
#include "smoothlp/lp.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smoothlp {

struct ExperimentConfig {
  LinearProgramd base_instance;
  std::vector<double> sigma_list;
  int trials_per_sigma = 0;
  std::uint64_t master_seed = 0;
  /// Support-identification probes per unique optimal trial (0 disables).
  int probe_count = 0;
  SolverOptions solver_options;
  /// Worker threads; 0 uses the hardware concurrency. Output does not depend on it.
  int threads = 0;
};

/// One perturbed instance. Everything after `status` except m, n and
/// norm_A is empty unless the instance has a unique, nondegenerate optimum
/// (iterations, terminated_exactly and gap_at_termination: whenever the
/// interior-point solver ran).
struct TrialRecord {
  double sigma = 0.0;
  int trial_index = 0;
  SolveStatus status = SolveStatus::NumericalFailure;
  int m = 0;
  int n = 0;
  double norm_A = 0.0;
  std::optional<double> norm_xstar, norm_ystar;
  std::optional<double> alpha_P, alpha_D, beta_P, beta_D, gamma, lambda, delta_lb;
  /// max(1, log(1/delta_lb)); 1 for infeasible or unbounded trials (delta = inf).
  std::optional<double> log_inv_delta_lb;
  std::optional<int> iterations;
  std::optional<bool> terminated_exactly;
  std::optional<double> gap_at_termination;
};

/// Seed for the perturbations of the i-th sigma value.
std::uint64_t sigma_seed(std::uint64_t master_seed, std::size_t sigma_index);

/// Runs every (sigma, trial) pair; records come back ordered by sigma index, then trial index.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

/// The single trial (sigma_index, trial_index) of `cfg`.
TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t sigma_index, int trial_index);

enum class TailQuantity { Alpha, Beta, Gamma };

const char* to_string(TailQuantity q);

struct TailRow {
  double eps;
  double empirical_prob;
  double standard_error;
  double bound;
  bool within_bound;
  bool vacuous;
};

/// Frequency of the small-alpha / small-beta / small-gamma events (jointly
/// with feasibility and boundedness) against their probability bounds:
///   alpha_P <= eps / ((||A||+2)^2 (||x*||+1))         vs 8 eps n (m+1) / sigma^2
///   beta_P  <= eps / max(1, ||A|| ||x*||)             vs 4 eps m / sigma^2
///   gamma   <= eps / ((1+||x*||^2+||y*||^2)(||A||+3)) vs eps n e / sigma^2
/// The denominator counts every record. Rows with a bound above 1 are vacuous.
std::vector<TailRow> tail_bound_report(const std::vector<TrialRecord>& records, TailQuantity quantity,
                                       const std::vector<double>& eps_grid);

struct LogDeltaRow {
  double sigma;
  int count;  // records contributing to the mean
  double mean_log_inv_delta_lb;
  double standard_error;  // +inf when count < 2
  double log_m_over_sigma;
  /// 3(log(21 (m+1)^(13/6) / sigma^2) + 1) + 7 E log(||A||+3) + 4 E log(1+||x*||+||y*||).
  double corollary_rhs;
  double mean_log_norm_A_plus_3;
  double norm_A_standard_error;
  /// log((sqrt(n) + sqrt(m)) sigma + 4).
  double expec_norm_bound;
};

std::vector<LogDeltaRow> log_delta_summary(const std::map<double, std::vector<TrialRecord>>& records_by_sigma);

/// True when the mean statistic never increases with sigma by more than
/// `slack` combined standard errors. Rows with infinite error are not compared.
bool nonincreasing_within(const std::vector<LogDeltaRow>& rows, double slack = 3.0);

std::map<double, std::vector<TrialRecord>> group_by_sigma(const std::vector<TrialRecord>& records);

struct DeltaProbeRow {
  double sigma;
  int trial_index;
  std::optional<double> min_failing_gap;
  double max_succeeding_gap;
  double certified_lb;
  bool consistent;
};

/// Empirical bracketing of the rounding threshold on every trial with a unique optimum.
std::vector<DeltaProbeRow> run_delta_probes(const ExperimentConfig& cfg);

void write_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path);
void write_csv(const std::vector<TailRow>& rows, const std::filesystem::path& path);
void write_csv(const std::vector<LogDeltaRow>& rows, const std::filesystem::path& path);
void write_csv(const std::vector<DeltaProbeRow>& rows, const std::filesystem::path& path);

std::vector<TrialRecord> read_records_csv(const std::filesystem::path& path);

extern const std::vector<std::string> kTrialRecordColumns;

}  // namespace smoothlp
