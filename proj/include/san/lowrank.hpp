#pragma once

#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace san {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Which matrix a low-rank model was fitted to.
enum class MatrixSource {
  kAdjacency,        // X = [X_S X_A], N x (N + M)
  kSocialScores,     // S_S, N x N
  kAttributeScores,  // S_A, N x M
};

struct SvdOptions {
  std::uint64_t seed = 0;
  int oversample = 10;  // sketch width is max(rank + oversample, 2 rank)
  int max_iters = 300;
  // Stop when every retained triplet satisfies |A v - s u| <= tol * s_max.
  double residual_tol = 1e-10;
  // Accept a run that hit max_iters if the retained singular values moved by
  // less than this (relative to s_max) over the last step.
  double value_tol = 1e-10;
};

// Rank-r truncated SVD A ~ U diag(s) V^T, stored as (U diag(s), V) so that an
// entry of the reconstruction is a single dot product.
class LowRankModel {
 public:
  LowRankModel() = default;
  LowRankModel(Eigen::MatrixXd scaled_left, Eigen::MatrixXd right, Eigen::VectorXd singular_values,
               MatrixSource source);

  int rank() const { return static_cast<int>(singular_values_.size()); }
  Eigen::Index rows() const { return scaled_left_.rows(); }
  Eigen::Index cols() const { return right_.rows(); }
  MatrixSource source() const { return source_; }
  const Eigen::VectorXd& singular_values() const { return singular_values_; }

  double entry(Eigen::Index row, Eigen::Index col) const {
    return scaled_left_.row(row).dot(right_.row(col));
  }
  Eigen::MatrixXd reconstruct() const { return scaled_left_ * right_.transpose(); }
  Eigen::MatrixXd gram_left() const { return scaled_left_.transpose() * scaled_left_; }
  Eigen::MatrixXd gram_right() const { return right_.transpose() * right_; }

 private:
  Eigen::MatrixXd scaled_left_;
  Eigen::MatrixXd right_;
  Eigen::VectorXd singular_values_;
  MatrixSource source_ = MatrixSource::kAdjacency;
};

// Randomized subspace iteration with Rayleigh-Ritz extraction. When the
// sketch width reaches min(rows, cols) the factorization is exact in one step.
// Throws DomainError for rank outside [1, min(rows, cols)] and SolverError
// when the singular values fail to settle within max_iters.
LowRankModel fit_lra(const SparseMatrix& matrix, int rank, MatrixSource source,
                     const SvdOptions& options = {});

// Frobenius norm of matrix - model.reconstruct(), without densifying either.
double reconstruction_error(const SparseMatrix& matrix, const LowRankModel& model);

}  // namespace san
