#include "smoothlp/io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace smoothlp {

using nlohmann::json;

namespace {

LinearProgramd lp_from(const json& j) {
  const auto m = j.at("m").get<Index>();
  const auto n = j.at("n").get<Index>();
  if (m < 1 || n < 1) throw std::invalid_argument("m and n must be positive");
  const auto& rows = j.at("A");
  if (!rows.is_array() || Index(rows.size()) != m) throw std::invalid_argument("A must have m rows");
  LinearProgramd lp{Eigen::MatrixXd(m, n), Eigen::VectorXd(m), Eigen::VectorXd(n)};
  for (Index i = 0; i < m; ++i) {
    const auto& row = rows.at(std::size_t(i));
    if (!row.is_array() || Index(row.size()) != n) throw std::invalid_argument("every row of A must have n entries");
    for (Index k = 0; k < n; ++k) lp.A(i, k) = row.at(std::size_t(k)).get<double>();
  }
  const auto& b = j.at("b");
  const auto& c = j.at("c");
  if (Index(b.size()) != m) throw std::invalid_argument("b must have m entries");
  if (Index(c.size()) != n) throw std::invalid_argument("c must have n entries");
  for (Index i = 0; i < m; ++i) lp.b(i) = b.at(std::size_t(i)).get<double>();
  for (Index i = 0; i < n; ++i) lp.c(i) = c.at(std::size_t(i)).get<double>();
  return lp;
}

json lp_to(const LinearProgramd& lp) {
  json rows = json::array();
  for (Index i = 0; i < lp.m(); ++i) {
    json row = json::array();
    for (Index k = 0; k < lp.n(); ++k) row.push_back(lp.A(i, k));
    rows.push_back(row);
  }
  return {{"m", lp.m()},
          {"n", lp.n()},
          {"A", rows},
          {"b", std::vector<double>(lp.b.data(), lp.b.data() + lp.b.size())},
          {"c", std::vector<double>(lp.c.data(), lp.c.data() + lp.c.size())}};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

LinearProgramd lp_from_json(const std::string& text) {
  try {
    return lp_from(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed LP JSON: ") + e.what());
  }
}

std::string lp_to_json(const LinearProgramd& lp) { return lp_to(lp).dump(); }

LinearProgramd read_lp(const std::filesystem::path& path) { return lp_from_json(slurp(path)); }

void write_lp(const LinearProgramd& lp, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << lp_to_json(lp) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

ExperimentFile read_experiment(const std::filesystem::path& path) {
  ExperimentFile file;
  try {
    const json j = json::parse(slurp(path));
    ExperimentConfig& cfg = file.config;
    cfg.base_instance = lp_from(j.at("base_instance"));
    cfg.sigma_list = j.at("sigma_list").get<std::vector<double>>();
    cfg.trials_per_sigma = j.at("trials_per_sigma").get<int>();
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    cfg.probe_count = j.value("probe_count", 0);
    if (j.contains("solver_options")) {
      const auto& so = j.at("solver_options");
      cfg.solver_options.gap_tolerance = so.value("gap_tolerance", cfg.solver_options.gap_tolerance);
      cfg.solver_options.max_iterations = so.value("max_iterations", cfg.solver_options.max_iterations);
      cfg.solver_options.termination_period = so.value("termination_period", cfg.solver_options.termination_period);
      cfg.solver_options.attempt_termination = so.value("attempt_termination", cfg.solver_options.attempt_termination);
    }
    if (j.contains("eps_grid")) file.eps_grid = j.at("eps_grid").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment config: ") + e.what());
  }
  return file;
}

Eigen::VectorXd parse_vector(std::string_view text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    std::string cell(text.substr(pos, end - pos));
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number: '" + cell + "'");
    }
    if (used != cell.size()) throw std::invalid_argument("not a number: '" + cell + "'");
    values.push_back(v);
    pos = end + 1;
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), Index(values.size()));
}

}  // namespace smoothlp
