#include "smoothlp/harness.hpp"

#include "smoothlp/oracle.hpp"
#include "smoothlp/random.hpp"
#include "smoothlp/smoothing.hpp"
#include "smoothlp/termination.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace smoothlp {

const std::vector<std::string> kTrialRecordColumns = {
    "sigma",  "trial_index", "status", "m",      "n",        "norm_A",           "norm_xstar",
    "norm_ystar", "alpha_P", "alpha_D", "beta_P", "beta_D",   "gamma",            "lambda",
    "delta_lb", "log_inv_delta_lb", "iterations", "terminated_exactly", "gap_at_termination"};

std::uint64_t sigma_seed(std::uint64_t master_seed, std::size_t sigma_index) {
  return mix_seed(master_seed, static_cast<std::uint64_t>(sigma_index));
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
}

void fill_geometry(TrialRecord& rec, const LinearProgramd& lp, const PrimalDualPointd& pt, const SupportPair& sp) {
  const GeomQuantities<double> g = geometric_quantities(lp, pt, sp);
  rec.norm_xstar = pt.x.norm();
  rec.norm_ystar = pt.y.norm();
  rec.alpha_P = g.alpha_P;
  rec.alpha_D = g.alpha_D;
  rec.beta_P = g.beta_P;
  rec.beta_D = g.beta_D;
  rec.gamma = g.gamma;
  rec.lambda = g.lambda;
  rec.delta_lb = g.delta_lb;
  rec.log_inv_delta_lb = std::max(1.0, std::log(1.0 / g.delta_lb));
}

void fill_solver(TrialRecord& rec, const SolveResult& res) {
  rec.iterations = res.iterations;
  rec.terminated_exactly = res.terminated_exactly;
  if (!res.gap_history.empty()) rec.gap_at_termination = res.gap_history.back();
}

LinearProgramd trial_instance(const ExperimentConfig& cfg, std::size_t sigma_index, int trial_index) {
  const PerturbationSpec spec{cfg.sigma_list.at(sigma_index), sigma_seed(cfg.master_seed, sigma_index)};
  return perturb(cfg.base_instance, spec, static_cast<std::uint64_t>(trial_index));
}

void check_config(const ExperimentConfig& cfg) {
  if (cfg.trials_per_sigma < 0) throw std::invalid_argument("trials_per_sigma must be non-negative");
  for (double s : cfg.sigma_list)
    if (!(s > 0)) throw std::invalid_argument("sigmas must be positive");
  if (const auto problems = validate(cfg.base_instance); !problems.empty())
    throw std::invalid_argument("invalid base instance: " + problems.front());
  if (spectral_norm(cfg.base_instance.A) > 1.0 + 1e-12)
    throw std::invalid_argument("base instance must satisfy ||A|| <= 1 (normalize it first)");
  cfg.solver_options.check();
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t sigma_index, int trial_index) {
  TrialRecord rec;
  rec.sigma = cfg.sigma_list.at(sigma_index);
  rec.trial_index = trial_index;
  const LinearProgramd lp = trial_instance(cfg, sigma_index, trial_index);
  rec.m = static_cast<int>(lp.m());
  rec.n = static_cast<int>(lp.n());

  try {
    rec.norm_A = spectral_norm(lp.A);
    if (within_oracle_budget(lp)) {
      const OracleResult oracle = brute_force_solve(lp);
      rec.status = oracle.status;
      if (oracle.status == SolveStatus::Optimal) {
        fill_solver(rec, solve(lp, cfg.solver_options));
        if (oracle.unique) fill_geometry(rec, lp, *oracle.point, *oracle.supports);
      }
    } else {
      const SolveResult res = solve(lp, cfg.solver_options);
      rec.status = res.status;
      fill_solver(rec, res);
      if (res.terminated_exactly) fill_geometry(rec, lp, *res.point, support_of(*res.point));
    }
  } catch (const std::exception&) {
    // Per-trial breakdowns are data; geometry columns stay empty.
    rec.status = SolveStatus::NumericalFailure;
    return rec;
  }

  // delta is infinite for infeasible or unbounded programs.
  if (rec.status == SolveStatus::Infeasible || rec.status == SolveStatus::Unbounded) rec.log_inv_delta_lb = 1.0;
  return rec;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
  check_config(cfg);
  const std::size_t per = static_cast<std::size_t>(cfg.trials_per_sigma);
  std::vector<TrialRecord> records(cfg.sigma_list.size() * per);
  parallel_for(records.size(), cfg.threads, [&](std::size_t k) {
    records[k] = run_trial(cfg, k / per, static_cast<int>(k % per));
  });
  return records;
}

std::vector<DeltaProbeRow> run_delta_probes(const ExperimentConfig& cfg) {
  check_config(cfg);
  const std::size_t per = static_cast<std::size_t>(cfg.trials_per_sigma);
  std::vector<std::optional<DeltaProbeRow>> slots(cfg.sigma_list.size() * per);
  if (cfg.probe_count > 0) {
    parallel_for(slots.size(), cfg.threads, [&](std::size_t k) {
      const std::size_t si = k / per;
      const int trial = static_cast<int>(k % per);
      const LinearProgramd lp = trial_instance(cfg, si, trial);
      if (!within_oracle_budget(lp)) return;
      try {
        const OracleResult oracle = brute_force_solve(lp);
        if (oracle.status != SolveStatus::Optimal || !oracle.unique) return;
        const DeltaProbeResult probe =
            delta_probe(lp, oracle, cfg.probe_count, mix_seed(sigma_seed(cfg.master_seed, si), std::uint64_t(trial)));
        slots[k] = DeltaProbeRow{cfg.sigma_list[si], trial, probe.min_failing_gap, probe.max_succeeding_gap,
                                 probe.certified_lb, probe.consistent};
      } catch (const std::exception&) {
      }
    });
  }
  std::vector<DeltaProbeRow> rows;
  for (auto& s : slots)
    if (s) rows.push_back(*s);
  return rows;
}

const char* to_string(TailQuantity q) {
  switch (q) {
    case TailQuantity::Alpha: return "alpha";
    case TailQuantity::Beta: return "beta";
    case TailQuantity::Gamma: return "gamma";
  }
  return "unknown";
}

namespace {

// Whether the record's quantity falls below the eps-scaled event threshold.
bool small_event(const TrialRecord& r, TailQuantity q, double eps) {
  if (r.status != SolveStatus::Optimal || !r.norm_xstar) return false;
  const double a = r.norm_A;
  const double x = *r.norm_xstar;
  const double y = *r.norm_ystar;
  switch (q) {
    case TailQuantity::Alpha: return *r.alpha_P <= eps / ((a + 2.0) * (a + 2.0) * (x + 1.0));
    case TailQuantity::Beta: return *r.beta_P <= eps / std::max(1.0, a * x);
    case TailQuantity::Gamma: return *r.gamma <= eps / ((1.0 + x * x + y * y) * (a + 3.0));
  }
  return false;
}

double tail_bound(TailQuantity q, double eps, double m, double n, double sigma) {
  const double var = sigma * sigma;
  switch (q) {
    case TailQuantity::Alpha: return 8.0 * eps * n * (m + 1.0) / var;
    case TailQuantity::Beta: return 4.0 * eps * m / var;
    case TailQuantity::Gamma: return eps * n * std::numbers::e / var;
  }
  return 0.0;
}

}  // namespace

std::vector<TailRow> tail_bound_report(const std::vector<TrialRecord>& records, TailQuantity quantity,
                                       const std::vector<double>& eps_grid) {
  if (records.empty()) throw std::invalid_argument("tail_bound_report: empty record set");
  const TrialRecord& first = records.front();
  for (const auto& r : records)
    if (r.sigma != first.sigma || r.m != first.m || r.n != first.n)
      throw std::invalid_argument("tail_bound_report: records must share sigma and dimensions");

  const double total = static_cast<double>(records.size());
  std::vector<TailRow> rows;
  for (double eps : eps_grid) {
    const auto hits = std::count_if(records.begin(), records.end(),
                                    [&](const TrialRecord& r) { return small_event(r, quantity, eps); });
    TailRow row;
    row.eps = eps;
    row.empirical_prob = static_cast<double>(hits) / total;
    row.standard_error = std::sqrt(row.empirical_prob * (1.0 - row.empirical_prob) / total);
    row.bound = tail_bound(quantity, eps, first.m, first.n, first.sigma);
    row.vacuous = row.bound > 1.0;
    row.within_bound = row.vacuous || row.empirical_prob - 3.0 * row.standard_error <= row.bound;
    rows.push_back(row);
  }
  return rows;
}

std::map<double, std::vector<TrialRecord>> group_by_sigma(const std::vector<TrialRecord>& records) {
  std::map<double, std::vector<TrialRecord>> out;
  for (const auto& r : records) out[r.sigma].push_back(r);
  return out;
}

namespace {
std::pair<double, double> mean_se(const std::vector<double>& v) {
  if (v.empty()) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity()};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= double(v.size());
  if (v.size() < 2) return {mean, std::numeric_limits<double>::infinity()};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / double(v.size() - 1) / double(v.size()))};
}
}  // namespace

std::vector<LogDeltaRow> log_delta_summary(const std::map<double, std::vector<TrialRecord>>& records_by_sigma) {
  if (records_by_sigma.size() < 2) throw std::invalid_argument("log_delta_summary: need at least two sigma values");
  std::vector<LogDeltaRow> rows;
  for (const auto& [sigma, records] : records_by_sigma) {
    if (records.empty()) throw std::invalid_argument("log_delta_summary: empty record group");
    std::vector<double> stat, log_norm, log_sol;
    for (const auto& r : records) {
      if (r.log_inv_delta_lb) stat.push_back(*r.log_inv_delta_lb);
      log_norm.push_back(std::log(r.norm_A + 3.0));
      if (r.status == SolveStatus::Optimal && r.norm_xstar)
        log_sol.push_back(std::log(1.0 + *r.norm_xstar + *r.norm_ystar));
    }
    const double m = records.front().m;
    const double n = records.front().n;
    LogDeltaRow row;
    row.sigma = sigma;
    row.count = static_cast<int>(stat.size());
    std::tie(row.mean_log_inv_delta_lb, row.standard_error) = mean_se(stat);
    row.log_m_over_sigma = std::log(m / sigma);
    std::tie(row.mean_log_norm_A_plus_3, row.norm_A_standard_error) = mean_se(log_norm);
    const double mean_log_sol = log_sol.empty() ? 0.0 : mean_se(log_sol).first;
    row.corollary_rhs = 3.0 * (std::log(21.0 * std::pow(m + 1.0, 13.0 / 6.0) / (sigma * sigma)) + 1.0) +
                        7.0 * row.mean_log_norm_A_plus_3 + 4.0 * mean_log_sol;
    row.expec_norm_bound = std::log((std::sqrt(n) + std::sqrt(m)) * sigma + 4.0);
    rows.push_back(row);
  }
  return rows;
}

bool nonincreasing_within(const std::vector<LogDeltaRow>& rows, double slack) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& lo = rows[i - 1];
    const auto& hi = rows[i];
    if (!std::isfinite(lo.standard_error) || !std::isfinite(hi.standard_error)) continue;
    const double se = std::hypot(lo.standard_error, hi.standard_error);
    if (hi.mean_log_inv_delta_lb > lo.mean_log_inv_delta_lb + slack * se) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }
std::string fmt(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }
std::string fmt(bool v) { return v ? "true" : "false"; }
std::string fmt(const std::optional<bool>& v) { return v ? fmt(*v) : std::string(); }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

template <typename... Cells>
void write_row(std::ostream& out, const Cells&... cells) {
  bool first = true;
  ((out << (first ? "" : ",") << cells, first = false), ...);
  out << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("malformed number '" + s + "'");
  return v;
}

std::optional<double> parse_opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

SolveStatus parse_status(const std::string& s) {
  for (SolveStatus st : {SolveStatus::Optimal, SolveStatus::Infeasible, SolveStatus::Unbounded,
                         SolveStatus::IterationLimit, SolveStatus::NumericalFailure})
    if (s == to_string(st)) return st;
  throw std::runtime_error("unknown status '" + s + "'");
}

}  // namespace

void write_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < kTrialRecordColumns.size(); ++i) out << (i ? "," : "") << kTrialRecordColumns[i];
  out << '\n';
  for (const auto& r : records)
    write_row(out, fmt(r.sigma), r.trial_index, to_string(r.status), r.m, r.n, fmt(r.norm_A), fmt(r.norm_xstar),
              fmt(r.norm_ystar), fmt(r.alpha_P), fmt(r.alpha_D), fmt(r.beta_P), fmt(r.beta_D), fmt(r.gamma),
              fmt(r.lambda), fmt(r.delta_lb), fmt(r.log_inv_delta_lb), fmt(r.iterations), fmt(r.terminated_exactly),
              fmt(r.gap_at_termination));
  finish(out, path);
}

void write_csv(const std::vector<TailRow>& rows, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "eps,empirical_prob,stderr,bound,within_bound,vacuous\n";
  for (const auto& r : rows)
    write_row(out, fmt(r.eps), fmt(r.empirical_prob), fmt(r.standard_error), fmt(r.bound), fmt(r.within_bound),
              fmt(r.vacuous));
  finish(out, path);
}

void write_csv(const std::vector<LogDeltaRow>& rows, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "sigma,count,mean_log_inv_delta_lb,stderr,log_m_over_sigma,corollary_rhs,mean_log_norm_A_plus_3,"
         "norm_A_stderr,expec_norm_bound\n";
  for (const auto& r : rows)
    write_row(out, fmt(r.sigma), r.count, fmt(r.mean_log_inv_delta_lb), fmt(r.standard_error), fmt(r.log_m_over_sigma),
              fmt(r.corollary_rhs), fmt(r.mean_log_norm_A_plus_3), fmt(r.norm_A_standard_error),
              fmt(r.expec_norm_bound));
  finish(out, path);
}

void write_csv(const std::vector<DeltaProbeRow>& rows, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "sigma,trial_index,min_failing_gap,max_succeeding_gap,certified_lb,consistent\n";
  for (const auto& r : rows)
    write_row(out, fmt(r.sigma), r.trial_index, fmt(r.min_failing_gap), fmt(r.max_succeeding_gap), fmt(r.certified_lb),
              fmt(r.consistent));
  finish(out, path);
}

std::vector<TrialRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || split(line) != kTrialRecordColumns)
    throw std::runtime_error("unexpected header in " + path.string());

  std::vector<TrialRecord> out;
  while (std::getline(in, line)) {
    const auto c = split(line);
    if (c.size() != kTrialRecordColumns.size()) throw std::runtime_error("wrong column count in " + path.string());
    TrialRecord r;
    r.sigma = parse_double(c[0]);
    r.trial_index = std::stoi(c[1]);
    r.status = parse_status(c[2]);
    r.m = std::stoi(c[3]);
    r.n = std::stoi(c[4]);
    r.norm_A = parse_double(c[5]);
    r.norm_xstar = parse_opt_double(c[6]);
    r.norm_ystar = parse_opt_double(c[7]);
    r.alpha_P = parse_opt_double(c[8]);
    r.alpha_D = parse_opt_double(c[9]);
    r.beta_P = parse_opt_double(c[10]);
    r.beta_D = parse_opt_double(c[11]);
    r.gamma = parse_opt_double(c[12]);
    r.lambda = parse_opt_double(c[13]);
    r.delta_lb = parse_opt_double(c[14]);
    r.log_inv_delta_lb = parse_opt_double(c[15]);
    if (!c[16].empty()) r.iterations = std::stoi(c[16]);
    if (!c[17].empty()) r.terminated_exactly = c[17] == "true";
    r.gap_at_termination = parse_opt_double(c[18]);
    out.push_back(r);
  }
  return out;
}

}  // namespace smoothlp
