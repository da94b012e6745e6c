#pragma once

// JSON instance/config files and command-line vector parsing.

#include "smoothlp/harness.hpp"
#include "smoothlp/lp.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace smoothlp {

/// {"m":int,"n":int,"A":[[row]...],"b":[...],"c":[...]}, A row-major.
LinearProgramd lp_from_json(const std::string& text);
std::string lp_to_json(const LinearProgramd& lp);

LinearProgramd read_lp(const std::filesystem::path& path);
void write_lp(const LinearProgramd& lp, const std::filesystem::path& path);

/// Mirrors ExperimentConfig: base_instance (LP object), sigma_list,
/// trials_per_sigma, master_seed, probe_count, solver_options
/// {gap_tolerance, max_iterations, termination_period, attempt_termination}.
/// Optional "eps_grid" is returned separately.
struct ExperimentFile {
  ExperimentConfig config;
  std::vector<double> eps_grid;
};

ExperimentFile read_experiment(const std::filesystem::path& path);

/// Comma-separated decimals, e.g. "0.98,0.49".
Eigen::VectorXd parse_vector(std::string_view text);

}  // namespace smoothlp
