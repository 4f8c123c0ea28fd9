#include "san/lowrank.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "san/errors.hpp"

namespace san {

LowRankModel::LowRankModel(Eigen::MatrixXd scaled_left, Eigen::MatrixXd right,
                           Eigen::VectorXd singular_values, MatrixSource source)
    : scaled_left_(std::move(scaled_left)),
      right_(std::move(right)),
      singular_values_(std::move(singular_values)),
      source_(source) {}

namespace {

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

struct Ritz {
  Eigen::MatrixXd left;   // rows x l
  Eigen::MatrixXd right;  // cols x l
  Eigen::VectorXd values;
};

// Given an orthonormal basis Q of an approximate range of A, the best
// approximation inside span(Q) comes from the SVD of Q^T A = (A^T Q)^T.
Ritz rayleigh_ritz(const SparseMatrix& a, const Eigen::MatrixXd& q) {
  Eigen::MatrixXd z = a.transpose() * q;  // cols x l
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  const Eigen::Index l = z.cols();
  Eigen::MatrixXd q2 = qr.householderQ() * Eigen::MatrixXd::Identity(z.rows(), l);
  Eigen::MatrixXd r2 = qr.matrixQR().topRows(l).triangularView<Eigen::Upper>();
  // Q^T A = R2^T Q2^T and R2^T = U_r S V_r^T.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r2.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {q * svd.matrixU(), q2 * svd.matrixV(), svd.singularValues()};
}

LowRankModel truncate(const Ritz& ritz, int rank, MatrixSource source) {
  Eigen::VectorXd s = ritz.values.head(rank);
  Eigen::MatrixXd left = ritz.left.leftCols(rank) * s.asDiagonal();
  return LowRankModel(std::move(left), ritz.right.leftCols(rank), std::move(s), source);
}

}  // namespace

LowRankModel fit_lra(const SparseMatrix& matrix, int rank, MatrixSource source,
                     const SvdOptions& options) {
  const Eigen::Index rows = matrix.rows();
  const Eigen::Index cols = matrix.cols();
  const Eigen::Index min_dim = std::min(rows, cols);
  if (rank < 1 || rank > min_dim) {
    throw DomainError("rank " + std::to_string(rank) + " outside [1, " + std::to_string(min_dim) +
                      "]");
  }
  const Eigen::Index width =
      std::min<Eigen::Index>(std::max(rank + options.oversample, 2 * rank), min_dim);

  if (width == min_dim) {
    // Full-width sketch: span(Q) contains range(A), so one Rayleigh-Ritz
    // step is exact.
    Eigen::MatrixXd q = rows <= cols ? Eigen::MatrixXd::Identity(rows, rows)
                                     : orthonormal_basis(Eigen::MatrixXd(matrix));
    return truncate(rayleigh_ritz(matrix, q), rank, source);
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd omega(cols, width);
  for (Eigen::Index j = 0; j < width; ++j) {
    for (Eigen::Index i = 0; i < cols; ++i) omega(i, j) = gauss(rng);
  }
  Eigen::MatrixXd q = orthonormal_basis(matrix * omega);

  Eigen::VectorXd previous = Eigen::VectorXd::Constant(rank, -1.0);
  double value_change = 0.0;
  for (int iter = 0; iter < options.max_iters; ++iter) {
    Ritz ritz = rayleigh_ritz(matrix, q);
    Eigen::VectorXd top = ritz.values.head(rank);
    const double scale = std::max(top(0), 1e-300);
    value_change = (top - previous).cwiseAbs().maxCoeff() / scale;

    Eigen::MatrixXd residual = matrix * ritz.right.leftCols(rank) -
                               ritz.left.leftCols(rank) * top.asDiagonal();
    const double worst = residual.colwise().norm().maxCoeff() / scale;
    if (top(0) == 0.0 || worst <= options.residual_tol) return truncate(ritz, rank, source);
    if (iter + 1 == options.max_iters) {
      // Near-degenerate spectra at the cut leave the vectors ambiguous but the
      // best rank-r error is still attained once the values are stable.
      if (value_change <= options.value_tol) return truncate(ritz, rank, source);
      throw SolverError("truncated SVD did not converge in " + std::to_string(options.max_iters) +
                            " iterations",
                        worst);
    }
    previous = top;
    q = orthonormal_basis(matrix * ritz.right);
  }
  throw SolverError("truncated SVD: no iterations allowed", value_change);
}

double reconstruction_error(const SparseMatrix& matrix, const LowRankModel& model) {
  // ||A - L R^T||^2 = ||A||^2 - 2 <A, L R^T> + trace((L^T L)(R^T R))
  double cross = 0.0;
  for (Eigen::Index r = 0; r < matrix.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) {
      cross += it.value() * model.entry(r, it.col());
    }
  }
  const double model2 = model.gram_left().cwiseProduct(model.gram_right()).sum();
  return std::sqrt(std::max(0.0, matrix.squaredNorm() - 2.0 * cross + model2));
}

}  // namespace san
