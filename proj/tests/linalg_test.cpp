#include "fixtures.hpp"
#include "smoothlp/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace smoothlp;
using fixtures::vec;

TEST(SolveSquare, Identity) {
  EXPECT_EQ(solve_square(Eigen::MatrixXd::Identity(2, 2), vec({3, 4})), vec({3, 4}));
}

TEST(SolveSquare, LowerTriangular) {
  Eigen::MatrixXd M(2, 2);
  M << 1, 0, 1, 1;
  const Eigen::VectorXd x = solve_square(M, vec({1, 1.5}));
  EXPECT_DOUBLE_EQ(x(0), 1.0);
  EXPECT_DOUBLE_EQ(x(1), 0.5);
}

TEST(SolveSquare, RankDeficientThrows) {
  EXPECT_THROW(solve_square(Eigen::MatrixXd::Ones(2, 2), vec({1, 2})), SingularMatrix);
}

TEST(SolveSquare, NeedsPivoting) {
  Eigen::MatrixXd M(3, 3);
  M << 0, 2, 1, 1, 0, 0, 3, 1, 4;
  const Eigen::VectorXd x_true = vec({1, -2, 0.5});
  const Eigen::VectorXd x = solve_square(M, Eigen::VectorXd(M * x_true));
  EXPECT_LE((x - x_true).norm(), 1e-14);
}

TEST(SolveSquare, EmptySystem) { EXPECT_EQ(solve_square(Eigen::MatrixXd(0, 0), Eigen::VectorXd(0)).size(), 0); }

TEST(DistanceToSpan, Axis) {
  Eigen::MatrixXd B(2, 1);
  B << 0, 1;
  EXPECT_NEAR(distance_to_span(vec({1, 1}), B), 1.0, 1e-15);
}

TEST(DistanceToSpan, Diagonal) {
  Eigen::MatrixXd B(2, 1);
  B << 1, 1;
  EXPECT_NEAR(distance_to_span(vec({0, 1}), B), 0.7071067811865476, 1e-15);
}

TEST(DistanceToSpan, EmptyBasis) { EXPECT_EQ(distance_to_span(vec({1, 0}), Eigen::MatrixXd(2, 0)), 1.0); }

TEST(DistanceToSpan, VectorInsideSpan) {
  Eigen::MatrixXd B(3, 2);
  B << 1, 0, 0, 1, 1, 1;
  EXPECT_NEAR(distance_to_span(vec({2, 3, 5}), B), 0.0, 1e-14);
}

TEST(DistanceToSpan, DependentColumns) {
  Eigen::MatrixXd B(3, 2);
  B << 1, 2, 0, 0, 0, 0;
  EXPECT_NEAR(distance_to_span(vec({5, 3, 4}), B), 5.0, 1e-14);
}
