#pragma once

#include "smoothlp/lp.hpp"

namespace fixtures {

inline smoothlp::LinearProgramd identity2() {
  smoothlp::LinearProgramd lp{Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(2)};
  return lp;
}

/// max 2x1 + x2 s.t. x1 <= 1, x2 <= 1, x1 + x2 <= 1.5. Optimum (1, 0.5), duals (1, 0, 1).
inline smoothlp::LinearProgramd e2() {
  smoothlp::LinearProgramd lp{Eigen::MatrixXd(3, 2), Eigen::VectorXd(3), Eigen::VectorXd(2)};
  lp.A << 1, 0, 0, 1, 1, 1;
  lp.b << 1, 1, 1.5;
  lp.c << 2, 1;
  return lp;
}

inline smoothlp::LinearProgramd one_by_one() {
  return {Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)};
}

/// max x s.t. -x <= -1.
inline smoothlp::LinearProgramd unbounded_ray() {
  return {-Eigen::MatrixXd::Ones(1, 1), -Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)};
}

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out(i++) = d;
  return out;
}

}  // namespace fixtures
