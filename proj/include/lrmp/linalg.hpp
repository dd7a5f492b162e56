#pragma once

#include <Eigen/Dense>

#include "lrmp/errors.hpp"

namespace lrmp {

// Dense real symmetric matrix. Construction symmetrizes via (A + A^T)/2 so
// the stored entries satisfy entries(i,j) == entries(j,i) exactly.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(const Eigen::MatrixXd& a);

  int n() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& mat() const { return mat_; }

 private:
  Eigen::MatrixXd mat_;
};

// All n eigenpairs, eigenvalues sorted non-increasing, columns orthonormal.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  Eigen::MatrixXd reconstruct() const {
    return vectors * values.asDiagonal() * vectors.transpose();
  }
};

// Factored PSD matrix V diag(weights) V^T with orthonormal V (n x r) and
// non-negative weights sorted non-increasing.
struct LowRankFactor {
  int n = 0;
  Eigen::VectorXd weights;
  Eigen::MatrixXd vectors;

  int rank() const { return static_cast<int>(weights.size()); }
  double trace() const { return weights.sum(); }
  Eigen::MatrixXd to_dense() const {
    return vectors * weights.asDiagonal() * vectors.transpose();
  }
};

// Counters over eigensolve requests. Solvers advertising low SVD rank are
// checked against these in tests: only the requested k matters, not how the
// backend computes the pairs.
struct EigSolveStats {
  long full_calls = 0;
  long topk_calls = 0;
  int max_k_requested = 0;

  void reset() { *this = EigSolveStats{}; }
};

EigSolveStats& eig_stats();

/// Full symmetric eigendecomposition, eigenvalues descending.
EigenDecomposition full_eigh(const SymmetricMatrix& a);

/// The k algebraically largest eigenpairs of a. 1 <= k <= n.
EigenDecomposition top_k_eigh(const SymmetricMatrix& a, int k);

// The unique scalar lambda with sum_i max(0, values_i - lambda) = tau,
// found by an exact sorted piecewise-linear solve.
double simplex_threshold(const Eigen::VectorXd& values, double tau);

// Euclidean projection of a vector onto {w >= 0, sum w = tau}.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& values, double tau);

}  // namespace lrmp
