#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "san/errors.hpp"
#include "san/lowrank.hpp"

namespace san {
namespace {

SparseMatrix to_sparse(const Eigen::MatrixXd& d) { return d.sparseView(); }

SparseMatrix random_sparse(std::uint64_t seed, int rows, int cols, double density) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (unit(rng) < density) d(i, j) = unit(rng);
    }
  }
  return to_sparse(d);
}

TEST(LowRankTest, FullRankIsExact) {
  auto x = random_sparse(1, 12, 20, 0.3);
  auto model = fit_lra(x, 12, MatrixSource::kAdjacency);
  Eigen::MatrixXd dense = Eigen::MatrixXd(x);
  EXPECT_LE((model.reconstruct() - dense).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(LowRankTest, RankOneInputIsRecovered) {
  Eigen::VectorXd a = Eigen::VectorXd::LinSpaced(15, 1.0, 3.0);
  Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(9, -1.0, 2.0);
  Eigen::MatrixXd d = a * b.transpose();
  auto model = fit_lra(to_sparse(d), 1, MatrixSource::kAdjacency);
  EXPECT_LE((model.reconstruct() - d).norm(), 1e-9);
}

TEST(LowRankTest, MatchesDenseTruncation) {
  // Spectrum with a clear gap after index 5 so the rank-5 subspace is well
  // defined.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  Eigen::MatrixXd u = Eigen::MatrixXd::NullaryExpr(50, 8, [&] { return g(rng); });
  Eigen::MatrixXd v = Eigen::MatrixXd::NullaryExpr(70, 8, [&] { return g(rng); });
  Eigen::VectorXd s(8);
  s << 50, 40, 30, 20, 10, 1, 0.5, 0.2;
  Eigen::MatrixXd d = u * s.asDiagonal() * v.transpose();
  auto x = to_sparse(d);
  auto model = fit_lra(x, 5, MatrixSource::kAdjacency);
  Eigen::MatrixXd want = testing::dense_truncated(d, 5);
  EXPECT_LE((model.reconstruct() - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_NEAR(reconstruction_error(x, model), (d - want).norm(), 1e-6 * d.norm());
}

TEST(LowRankTest, RandomSparseErrorMatchesDense) {
  auto x = random_sparse(9, 50, 70, 0.1);
  Eigen::MatrixXd d(x);
  auto model = fit_lra(x, 5, MatrixSource::kAdjacency);
  EXPECT_NEAR(reconstruction_error(x, model), (d - testing::dense_truncated(d, 5)).norm(), 1e-6);
}

TEST(LowRankTest, ErrorNonIncreasingInRank) {
  auto x = random_sparse(11, 30, 40, 0.2);
  double previous = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= 30; r += 3) {
    double e = reconstruction_error(x, fit_lra(x, r, MatrixSource::kAdjacency));
    EXPECT_LE(e, previous + 1e-9);
    previous = e;
  }
}

TEST(LowRankTest, DeterministicUnderSeed) {
  auto x = random_sparse(2, 40, 40, 0.1);
  SvdOptions o;
  o.seed = 17;
  auto a = fit_lra(x, 6, MatrixSource::kSocialScores, o);
  auto b = fit_lra(x, 6, MatrixSource::kSocialScores, o);
  EXPECT_EQ(a.reconstruct(), b.reconstruct());
}

TEST(LowRankTest, RankOutOfRange) {
  auto x = random_sparse(3, 5, 8, 0.5);
  EXPECT_THROW(fit_lra(x, 0, MatrixSource::kAdjacency), DomainError);
  EXPECT_THROW(fit_lra(x, 6, MatrixSource::kAdjacency), DomainError);
}

TEST(LowRankTest, ZeroMatrix) {
  SparseMatrix x(6, 4);
  auto model = fit_lra(x, 2, MatrixSource::kAttributeScores);
  EXPECT_EQ(model.reconstruct().cwiseAbs().maxCoeff(), 0.0);
}

}  // namespace
}  // namespace san
