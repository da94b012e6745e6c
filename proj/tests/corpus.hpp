#pragma once

// Random small instances with unique optimal solutions, certified by the
// enumeration oracle.

#include "smoothlp/oracle.hpp"
#include "smoothlp/smoothing.hpp"
#include "smoothlp/termination.hpp"

#include <cstdint>
#include <vector>

namespace corpus {

struct Entry {
  smoothlp::LinearProgramd lp;
  smoothlp::OracleResult oracle;
  smoothlp::GeomQuantities<double> geom;
};

/// i.i.d. N(0,1) entries, scaled so ||A||, ||b||, ||c|| <= 1.
inline smoothlp::LinearProgramd gaussian_instance(smoothlp::Index m, smoothlp::Index n, std::uint64_t seed,
                                                  std::uint64_t index) {
  const smoothlp::LinearProgramd zero{Eigen::MatrixXd::Zero(m, n), Eigen::VectorXd::Zero(m),
                                      Eigen::VectorXd::Zero(n)};
  return smoothlp::normalize_base(smoothlp::perturb(zero, {1.0, seed}, index));
}

/// `per_shape` instances for each n in {2,3,4}, m in {n..n+4}.
inline std::vector<Entry> build(int per_shape, std::uint64_t seed) {
  using namespace smoothlp;
  std::vector<Entry> out;
  std::uint64_t index = 0;
  for (Index n = 2; n <= 4; ++n) {
    for (Index m = n; m <= n + 4; ++m) {
      int kept = 0;
      while (kept < per_shape) {
        LinearProgramd lp = gaussian_instance(m, n, seed, index++);
        OracleResult oracle = brute_force_solve(lp);
        if (oracle.status != SolveStatus::Optimal || !oracle.unique) continue;
        const auto geom = geometric_quantities(lp, *oracle.point, *oracle.supports);
        out.push_back({std::move(lp), std::move(oracle), geom});
        ++kept;
      }
    }
  }
  return out;
}

/// First unique-optimal draw of a normalized 6 x 3 Gaussian instance.
inline smoothlp::LinearProgramd standard_base(std::uint64_t seed) {
  using namespace smoothlp;
  for (std::uint64_t index = 0;; ++index) {
    LinearProgramd lp = gaussian_instance(6, 3, seed, index);
    const OracleResult o = brute_force_solve(lp);
    if (o.status == SolveStatus::Optimal && o.unique) return lp;
  }
}

}  // namespace corpus
