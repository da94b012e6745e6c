// smoothlp: command-line front end.
//
//   smoothlp solve <lp.json>
//   smoothlp round <lp.json> --x 0.98,0.49
//   smoothlp analyze <lp.json>
//   smoothlp perturb <lp.json> --sigma S --seed K --trial T [--normalize] [--out file]
//   smoothlp experiment <config.json> --out dir [--normalize] [--threads N]
//   smoothlp check-lemmas --samples N --seed K
//
// Exit status: 0 success, 1 violation or failed verification, 2 usage or I/O error.

#include "smoothlp/harness.hpp"
#include "smoothlp/io.hpp"
#include "smoothlp/ipm.hpp"
#include "smoothlp/oracle.hpp"
#include "smoothlp/random.hpp"
#include "smoothlp/smoothing.hpp"
#include "smoothlp/termination.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

using namespace smoothlp;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string vec(const Eigen::VectorXd& v) {
  std::string s = "(";
  for (Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v(i));
  return s + ")";
}

std::string index_set(const std::vector<Index>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i] + 1);
  return s + "}";
}

int cmd_solve(const std::string& path, const SolverOptions& opts) {
  const LinearProgramd lp = read_lp(path);
  const SolveResult res = solve(lp, opts);
  std::cout << "status: " << to_string(res.status) << "\n";
  std::cout << "iterations: " << res.iterations << "\n";
  if (res.point) {
    std::cout << "x: " << vec(res.point->x) << "\n";
    std::cout << "y: " << vec(res.point->y) << "\n";
    std::cout << "objective: " << num(lp.c.dot(res.point->x)) << "\n";
    std::cout << "gap: " << num(res.point->y.dot(lp.b) - lp.c.dot(res.point->x)) << "\n";
  }
  std::cout << "terminated_exactly: " << (res.terminated_exactly ? "true" : "false") << "\n";
  if (res.supports) std::cout << "U=" << index_set(res.supports->U) << " V=" << index_set(res.supports->V) << "\n";
  return kOk;
}

int cmd_round(const std::string& path, const std::string& x_text) {
  const LinearProgramd lp = read_lp(path);
  const Eigen::VectorXd x = parse_vector(x_text);
  if (x.size() != lp.n()) throw std::invalid_argument("--x must have n entries");
  const SupportPair sp = candidate_supports(lp, x);
  std::cout << "U=" << index_set(sp.U) << " V=" << index_set(sp.V) << "\n";
  const auto rounded = round_primal_dual(lp, sp);
  if (const auto* fail = std::get_if<RoundingFailure>(&rounded)) {
    std::cout << "rounding failed: " << fail->message << "\n";
    return kViolation;
  }
  const auto& pt = std::get<PrimalDualPointd>(rounded);
  std::cout << "x: " << vec(pt.x) << "\n";
  std::cout << "y: " << vec(pt.y) << "\n";
  const bool ok = verify_candidate(lp, pt);
  std::cout << (ok ? "verified" : "not verified") << "\n";
  return ok ? kOk : kViolation;
}

int cmd_analyze(const std::string& path, const SolverOptions& opts) {
  const LinearProgramd lp = read_lp(path);
  std::optional<PrimalDualPointd> pt;
  if (within_oracle_budget(lp)) {
    const OracleResult oracle = brute_force_solve(lp);
    std::cout << "status: " << to_string(oracle.status) << "\n";
    if (oracle.status != SolveStatus::Optimal) return kOk;
    if (!oracle.unique) std::cout << "warning: optimum is degenerate or not unique\n";
    pt = oracle.point;
  } else {
    const SolveResult res = solve(lp, opts);
    std::cout << "status: " << to_string(res.status) << "\n";
    if (res.status != SolveStatus::Optimal) return kOk;
    if (!res.terminated_exactly) {
      std::cout << "no exact optimum recovered; geometric quantities need the exact pair\n";
      return kViolation;
    }
    pt = res.point;
  }
  const SupportPair sp = support_of(*pt);
  const GeomQuantities<double> g = geometric_quantities(lp, *pt, sp);
  std::cout << "x*: " << vec(pt->x) << "\n";
  std::cout << "y*: " << vec(pt->y) << "\n";
  std::cout << "U=" << index_set(sp.U) << " V=" << index_set(sp.V) << "\n";
  std::cout << "norm_A: " << num(g.norm_A) << "\n";
  std::cout << "alpha_P: " << num(g.alpha_P) << "\n";
  std::cout << "alpha_D: " << num(g.alpha_D) << "\n";
  std::cout << "beta_P: " << num(g.beta_P) << "\n";
  std::cout << "beta_D: " << num(g.beta_D) << "\n";
  std::cout << "gamma: " << num(g.gamma) << "\n";
  std::cout << "lambda: " << num(g.lambda) << "\n";
  std::cout << "delta_lb: " << num(g.delta_lb) << "\n";
  return kOk;
}

int cmd_perturb(const std::string& path, double sigma, std::uint64_t seed, std::uint64_t trial, bool normalize,
                const std::string& out) {
  LinearProgramd lp = read_lp(path);
  if (normalize) lp = normalize_base(lp);
  const PerturbationSpec spec{sigma, seed};
  if (!normalize && !is_normalized(lp))
    std::cerr << "warning: base has norm above 1; pass --normalize to rescale it first\n";
  if (spec.outside_complexity_regime(lp.m(), lp.n()))
    std::cerr << "warning: sigma exceeds 1/sqrt(m n), outside the regime of the complexity bound\n";
  const LinearProgramd perturbed = perturb(lp, spec, trial);
  if (out.empty())
    std::cout << lp_to_json(perturbed) << "\n";
  else
    write_lp(perturbed, out);
  return kOk;
}

int cmd_experiment(const std::string& path, const std::string& out_dir, bool normalize, int threads) {
  ExperimentFile file = read_experiment(path);
  ExperimentConfig& cfg = file.config;
  if (normalize) cfg.base_instance = normalize_base(cfg.base_instance);
  cfg.threads = threads;
  const std::vector<double> eps_grid =
      file.eps_grid.empty() ? std::vector<double>{1e-4, 3e-4, 1e-3, 3e-3, 1e-2} : file.eps_grid;

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  const std::vector<TrialRecord> records = run_experiment(cfg);
  write_csv(records, dir / "records.csv");
  std::cout << "records: " << records.size() << " -> " << (dir / "records.csv").string() << "\n";

  bool violation = false;
  const auto groups = group_by_sigma(records);
  std::size_t sigma_index = 0;
  for (const auto& [sigma, group] : groups) {
    for (TailQuantity q : {TailQuantity::Alpha, TailQuantity::Beta, TailQuantity::Gamma}) {
      const auto rows = tail_bound_report(group, q, eps_grid);
      const std::string name = std::string("tail_") + to_string(q) +
                               (groups.size() > 1 ? "_sigma" + std::to_string(sigma_index) : "") + ".csv";
      write_csv(rows, dir / name);
      for (const auto& r : rows) {
        if (!r.within_bound) {
          violation = true;
          std::cout << "violation: " << to_string(q) << " sigma=" << num(sigma) << " eps=" << num(r.eps) << "\n";
        }
      }
    }
    ++sigma_index;
  }
  if (groups.size() >= 2) {
    const auto summary = log_delta_summary(groups);
    write_csv(summary, dir / "log_delta.csv");
    for (const auto& row : summary)
      std::cout << "sigma=" << num(row.sigma) << " mean max(1,log(1/delta_lb))=" << num(row.mean_log_inv_delta_lb)
                << " +- " << num(row.standard_error) << "\n";
    if (!nonincreasing_within(summary)) std::cout << "note: mean statistic increases with sigma beyond 3 stderr\n";
  }
  if (cfg.probe_count > 0) {
    const auto probes = run_delta_probes(cfg);
    write_csv(probes, dir / "delta_probes.csv");
    for (const auto& p : probes) {
      if (!p.consistent) {
        violation = true;
        std::cout << "violation: support misidentified below delta_lb (sigma=" << num(p.sigma)
                  << ", trial=" << p.trial_index << ")\n";
      }
    }
  }
  return violation ? kViolation : kOk;
}

int cmd_check_lemmas(long long samples, std::uint64_t seed) {
  const SweepSummary ratio = sweep_ratio_lemma(samples, seed);
  std::cout << "gaussian ratio bound: " << ratio.checked - ratio.failures << " pass, " << ratio.failures
            << " fail\n";
  const SweepSummary tail = sweep_tail_lemma(samples, seed);
  std::cout << "gaussian tail bound: " << tail.checked - tail.failures << " pass, " << tail.failures
            << " fail (worst probability/bound = " << num(tail.worst_ratio) << ")\n";
  std::cout << "gaussian tail window bound: " << tail.checked - tail.window_failures << " pass, "
            << tail.window_failures << " fail\n";

  std::vector<double> uniform(static_cast<std::size_t>(std::max(samples, 1LL)));
  CounterStream rng(seed, 3);
  for (double& u : uniform) u = rng.uniform();
  const LogExpectationCheck to_log = tail_to_log_expectation_check(uniform, std::exp(1.0), 1.0);
  std::cout << "log expectation (uniform, alpha=e, k=1): mean " << num(to_log.empirical_mean) << " +- "
            << num(to_log.standard_error) << ", bound " << num(to_log.bound) << ", "
            << (to_log.holds ? "pass" : "fail") << "\n";
  return (ratio.failures || tail.failures || !to_log.holds) ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interior-point solving, exact rounding and smoothed-analysis experiments for LPs"};
  app.require_subcommand(1);

  SolverOptions opts;
  auto add_solver_flags = [&opts](CLI::App* sub) {
    sub->add_option("--gap-tolerance", opts.gap_tolerance, "Stopping tolerance on the duality gap");
    sub->add_option("--max-iterations", opts.max_iterations, "Iteration cap");
    sub->add_option("--termination-period", opts.termination_period, "Iterations between rounding attempts");
  };

  std::string lp_path;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an LP with the interior-point method");
  solve_cmd->add_option("lp", lp_path, "LP JSON file")->required();
  add_solver_flags(solve_cmd);
  bool no_termination = false;
  solve_cmd->add_flag("--no-termination", no_termination, "Disable periodic rounding attempts");

  std::string x_text;
  auto* round_cmd = app.add_subcommand("round", "Round an approximate primal point to an exact pair");
  round_cmd->add_option("lp", lp_path, "LP JSON file")->required();
  round_cmd->add_option("--x", x_text, "Primal point, comma separated")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Print the geometric quantities and delta lower bound");
  analyze_cmd->add_option("lp", lp_path, "LP JSON file")->required();
  add_solver_flags(analyze_cmd);

  double sigma = 0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  bool normalize = false;
  std::string out;
  auto* perturb_cmd = app.add_subcommand("perturb", "Write a Gaussian perturbation of an LP");
  perturb_cmd->add_option("lp", lp_path, "LP JSON file")->required();
  perturb_cmd->add_option("--sigma", sigma, "Noise standard deviation")->required();
  perturb_cmd->add_option("--seed", seed, "Master seed")->required();
  perturb_cmd->add_option("--trial", trial, "Trial index")->required();
  perturb_cmd->add_flag("--normalize", normalize, "Scale A, b, c to norm at most 1 first");
  perturb_cmd->add_option("--out", out, "Output file (default: stdout)");

  std::string config_path;
  int threads = 0;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  experiment_cmd->add_option("config", config_path, "Experiment JSON file")->required();
  experiment_cmd->add_option("--out", out, "Output directory")->required();
  experiment_cmd->add_flag("--normalize", normalize, "Scale the base instance to norm at most 1 first");
  experiment_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");

  long long samples = 100000;
  auto* lemmas_cmd = app.add_subcommand("check-lemmas", "Sweep the Gaussian inequalities");
  lemmas_cmd->add_option("--samples", samples, "Configurations per sweep");
  lemmas_cmd->add_option("--seed", seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve_cmd) {
      opts.attempt_termination = !no_termination;
      return cmd_solve(lp_path, opts);
    }
    if (*round_cmd) return cmd_round(lp_path, x_text);
    if (*analyze_cmd) return cmd_analyze(lp_path, opts);
    if (*perturb_cmd) return cmd_perturb(lp_path, sigma, seed, trial, normalize, out);
    if (*experiment_cmd) return cmd_experiment(config_path, out, normalize, threads);
    if (*lemmas_cmd) return cmd_check_lemmas(samples, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
