// Acceptance suite: one PASS/FAIL line per criterion, plus indented detail lines.
// Exit status is the number of failed criteria.

#include "corpus.hpp"
#include "smoothlp/harness.hpp"
#include "smoothlp/ipm.hpp"
#include "smoothlp/oracle.hpp"
#include "smoothlp/random.hpp"
#include "smoothlp/smoothing.hpp"
#include "smoothlp/termination.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

using namespace smoothlp;

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void verdict(int id, const char* name, bool ok, double seconds, double limit) {
  const bool in_time = seconds <= limit;
  std::printf("%s criterion %d: %s (%.1f s, limit %.0f s)\n", ok && in_time ? "PASS" : "FAIL", id, name, seconds,
              limit);
  if (!in_time) std::printf("    runtime limit exceeded\n");
  if (!(ok && in_time)) ++failures;
  std::fflush(stdout);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const std::vector<double> kEpsGrid{1e-4, 3e-4, 1e-3, 3e-3, 1e-2};

ExperimentConfig standard_experiment(const LinearProgramd& base) {
  ExperimentConfig cfg;
  cfg.base_instance = base;
  cfg.sigma_list = {0.5};
  cfg.trials_per_sigma = 2000;
  cfg.master_seed = 42;
  return cfg;
}

}  // namespace

int main() {
  Timer corpus_timer;
  const std::vector<corpus::Entry> corpus = corpus::build(16, 20240601);
  const double corpus_seconds = corpus_timer.seconds();
  std::printf("corpus: %zu unique-optimal instances, n in {2,3,4}, m in {n..n+4} (%.1f s)\n", corpus.size(),
              corpus_seconds);

  {
    Timer t;
    int objective_ok = 0, support_ok = 0;
    for (const auto& e : corpus) {
      const SolveResult r = solve(e.lp);
      if (r.status != SolveStatus::Optimal || !r.point) continue;
      const double obj = e.lp.c.dot(r.point->x);
      if (std::abs(obj - e.oracle.objective) <= 1e-7 * std::max(1.0, std::abs(e.oracle.objective))) ++objective_ok;
      if (r.terminated_exactly && r.supports && *r.supports == *e.oracle.supports) ++support_ok;
    }
    std::printf("    objective within 1e-7: %d/%zu, exact supports recovered: %d/%zu\n", objective_ok, corpus.size(),
                support_ok, corpus.size());
    const bool ok = corpus.size() >= 200 && objective_ok == int(corpus.size()) && support_ok == int(corpus.size());
    verdict(1, "interior-point method with exact rounding matches the enumeration oracle", ok, t.seconds() + corpus_seconds,
            60);
  }

  {
    Timer t;
    long long probes = 0, misses = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& e = corpus[i];
      for (const auto& x : feasible_probes(e.lp, e.oracle, 100, 1000 + i, e.geom.delta_lb)) {
        ++probes;
        if (candidate_supports(e.lp, x) != *e.oracle.supports) ++misses;
      }
    }
    std::printf("    probes with gap below delta_lb: %lld, misidentified supports: %lld\n", probes, misses);
    verdict(2, "every feasible point with gap below delta_lb yields the optimal supports", misses == 0, t.seconds(), 60);
  }

  {
    Timer t;
    long long probes = 0;
    long long bad[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& e = corpus[i];
      for (const auto& x :
           feasible_probes(e.lp, e.oracle, 1000, 5000 + i, std::numeric_limits<double>::infinity())) {
        ++probes;
        const ClosenessReport r = check_closeness_lemmas(e.lp, *e.oracle.point, *e.oracle.supports, x);
        bad[0] += !r.gap_vs_tight_rows.holds;
        bad[1] += !r.tight_rows_vs_support.holds;
        bad[2] += !r.off_support_mass.holds;
        bad[3] += !r.distance_to_optimum.holds;
      }
    }
    std::printf("    probes: %lld; failures: gap/tight rows %lld, tight rows/support %lld, off-support mass %lld, "
                "distance to optimum %lld\n",
                probes, bad[0], bad[1], bad[2], bad[3]);
    verdict(3, "closeness inequalities hold on random feasible points", bad[0] + bad[1] + bad[2] + bad[3] == 0,
            t.seconds(), 60);
  }

  {
    Timer t;
    const SweepSummary ratio = sweep_ratio_lemma(100000, 11);
    const SweepSummary tail = sweep_tail_lemma(100000, 12);
    CounterStream rng(13, 0);
    std::vector<double> u(100000);
    for (double& x : u) x = rng.uniform();
    const LogExpectationCheck to_log = tail_to_log_expectation_check(u, std::exp(1.0), 1.0);
    const double exact = 1.0 + std::exp(-1.0);
    const bool to_log_ok = std::abs(to_log.empirical_mean - exact) <= 0.01 && to_log.empirical_mean < 2.0;
    std::printf("    density ratio bound: %lld checked, %lld failures\n", ratio.checked, ratio.failures);
    std::printf("    conditional tail bound: %lld checked, %lld failures (worst probability/bound %.4f)\n",
                tail.checked, tail.failures, tail.worst_ratio);
    std::printf("    conditional tail window bound (eps tau/sigma^2) e^((tau+3)/tau): %lld failures\n",
                tail.window_failures);
    std::printf("    log expectation on uniform samples: %.5f (exact %.5f), bound %.1f\n", to_log.empirical_mean, exact,
                to_log.bound);
    verdict(4, "Gaussian inequality sweeps", ratio.failures == 0 && tail.failures == 0 && to_log_ok, t.seconds(), 30);
  }

  const LinearProgramd base = corpus::standard_base(42);
  const auto out_dir = std::filesystem::temp_directory_path() / "smoothlp_acceptance";
  std::filesystem::create_directories(out_dir);
  {
    Timer t;
    const auto records = run_experiment(standard_experiment(base));
    write_csv(records, out_dir / "records_a.csv");
    int optimal = 0;
    for (const auto& r : records) optimal += r.status == SolveStatus::Optimal;
    std::printf("    trials: %zu, optimal: %d\n", records.size(), optimal);
    bool ok = true;
    for (TailQuantity q : {TailQuantity::Alpha, TailQuantity::Beta, TailQuantity::Gamma}) {
      for (const TailRow& row : tail_bound_report(records, q, kEpsGrid)) {
        std::printf("    %-5s eps=%-7g empirical=%.4f stderr=%.4f bound=%.4f%s\n", to_string(q), row.eps,
                    row.empirical_prob, row.standard_error, row.bound,
                    row.vacuous ? " (vacuous)" : row.within_bound ? "" : "  <-- exceeds bound");
        ok = ok && row.within_bound;
      }
    }
    verdict(5, "small alpha / beta / gamma frequencies stay below their probability bounds", ok, t.seconds(), 300);
  }

  {
    Timer t;
    ExperimentConfig cfg;
    cfg.base_instance = base;
    cfg.sigma_list = {0.05, 0.1, 0.2, 0.4};
    cfg.trials_per_sigma = 500;
    cfg.master_seed = 42;
    const auto rows = log_delta_summary(group_by_sigma(run_experiment(cfg)));
    bool norm_ok = true;
    for (const auto& r : rows) {
      std::printf("    sigma=%-5g mean max(1,log(1/delta_lb))=%.4f +- %.4f (n=%d)  E log(||A||+3)=%.4f bound %.4f\n",
                  r.sigma, r.mean_log_inv_delta_lb, r.standard_error, r.count, r.mean_log_norm_A_plus_3,
                  r.expec_norm_bound);
      norm_ok = norm_ok && r.mean_log_norm_A_plus_3 < r.expec_norm_bound;
    }
    const bool trend = nonincreasing_within(rows);
    if (!trend) std::printf("    mean statistic increases with sigma beyond 3 standard errors\n");
    verdict(6, "delta statistic nonincreasing in sigma and norm expectation below its bound", trend && norm_ok,
            t.seconds(), 300);
  }

  {
    Timer t;
    ExperimentConfig cfg = standard_experiment(base);
    cfg.threads = 3;  // a different schedule must not change the output
    write_csv(run_experiment(cfg), out_dir / "records_b.csv");
    const std::string a = read_file(out_dir / "records_a.csv");
    const std::string b = read_file(out_dir / "records_b.csv");
    std::printf("    records.csv sizes %zu and %zu bytes\n", a.size(), b.size());
    verdict(7, "repeated experiment writes a byte-identical records.csv", !a.empty() && a == b, t.seconds(), 300);
  }

  std::printf("%d criteria failed\n", failures);
  return failures;
}
