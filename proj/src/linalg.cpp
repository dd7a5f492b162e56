#include "lrmp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace lrmp {

SymmetricMatrix::SymmetricMatrix(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidInput("SymmetricMatrix: need a square matrix, n >= 1");
  }
  if (!a.allFinite()) {
    throw InvalidInput("SymmetricMatrix: non-finite entries");
  }
  mat_ = 0.5 * (a + a.transpose());
}

EigSolveStats& eig_stats() {
  thread_local EigSolveStats stats;
  return stats;
}

namespace {

// Eigen returns ascending eigenvalues; flip to descending and fix vector
// signs so the first component of magnitude > 1e-9 is positive.
EigenDecomposition solve_descending(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed to converge");
  }
  const int n = static_cast<int>(m.rows());
  EigenDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (std::abs(out.vectors(i, j)) > 1e-9) {
        if (out.vectors(i, j) < 0) out.vectors.col(j) = -out.vectors.col(j);
        break;
      }
    }
  }
  return out;
}

}  // namespace

EigenDecomposition full_eigh(const SymmetricMatrix& a) {
  ++eig_stats().full_calls;
  return solve_descending(a.mat());
}

EigenDecomposition top_k_eigh(const SymmetricMatrix& a, int k) {
  if (k < 1 || k > a.n()) {
    throw InvalidInput("top_k_eigh: require 1 <= k <= n");
  }
  auto& stats = eig_stats();
  ++stats.topk_calls;
  stats.max_k_requested = std::max(stats.max_k_requested, k);

  // Desk-scale backend: dense solve, then truncate. The interface contract
  // (k requested pairs) is what the callers and the cost instrumentation
  // rely on; an iterative backend can slot in behind it.
  EigenDecomposition full = solve_descending(a.mat());
  EigenDecomposition out;
  out.values = full.values.head(k);
  out.vectors = full.vectors.leftCols(k);
  return out;
}

double simplex_threshold(const Eigen::VectorXd& values, double tau) {
  if (!(tau > 0)) throw InvalidInput("simplex_threshold: tau must be positive");
  if (!values.allFinite() || values.size() == 0) {
    throw InvalidInput("simplex_threshold: need finite, non-empty values");
  }
  const int m = static_cast<int>(values.size());
  std::vector<double> sorted(values.data(), values.data() + m);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());

  // With v sorted descending, lambda_k = (sum_{i<=k} v_i - tau)/k solves the
  // threshold equation restricted to the top k entries; the correct k is the
  // largest one with v_k still above its own lambda_k.
  double cumsum = 0.0;
  double lambda = 0.0;
  for (int k = 1; k <= m; ++k) {
    cumsum += sorted[k - 1];
    const double candidate = (cumsum - tau) / k;
    if (sorted[k - 1] - candidate > 0) {
      lambda = candidate;
    } else {
      break;
    }
  }
  return lambda;
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& values, double tau) {
  const double lambda = simplex_threshold(values, tau);
  return (values.array() - lambda).max(0.0);
}

}  // namespace lrmp
