#pragma once

#include "lrmp/linalg.hpp"

namespace lrmp {

// Full-rank density matrix (trace 1, all eigenvalues > 0) kept in eigenpair
// form so its matrix logarithm is a diagonal rescale away.
struct DensityMatrix {
  Eigen::VectorXd values;   // descending, strictly positive, sums to 1
  Eigen::MatrixXd vectors;  // orthonormal columns

  Eigen::MatrixXd to_dense() const {
    return vectors * values.asDiagonal() * vectors.transpose();
  }
  Eigen::MatrixXd log_dense() const {
    return vectors * values.array().log().matrix().asDiagonal() *
           vectors.transpose();
  }
};

// Factored interior point (1-eps) V diag(w) V^T + eps/(n-r) (I - V V^T),
// trace 1. The shape every low-rank MEG update produces.
struct EntropicPoint {
  int n = 0;
  double eps = 0.0;
  Eigen::VectorXd weights;  // r positive reals summing to 1, descending
  Eigen::MatrixXd vectors;  // n x r orthonormal

  int r() const { return static_cast<int>(weights.size()); }
  Eigen::MatrixXd to_dense() const;
};

struct EntropicGradientStep {
  EntropicPoint base;
  SymmetricMatrix gradient;
  double eta = 0.0;
};

/// Fold (1-eps0) X0 + (eps0/n) I into the EntropicPoint shape. X0 must have
/// trace 1 and rank >= 1; eps0 in (0, 1] keeps the point interior.
EntropicPoint entropic_init(const LowRankFactor& x0, double eps0);

/// Matrix log of an EntropicPoint via its factored form:
/// V log((1-eps) W) V^T + log(eps/(n-r)) (I - V V^T). eps in (0,1) required.
Eigen::MatrixXd log_factored(const EntropicPoint& x);

/// Exact MEG step exp(log X - eta grad) / Tr(...), eigenvalues exponentiated
/// with a max shift for overflow safety.
DensityMatrix exact_meg_step(const EntropicGradientStep& step);
DensityMatrix exact_meg_step_dense(const Eigen::MatrixXd& log_x,
                                   const SymmetricMatrix& gradient, double eta);

struct LowRankMegResult {
  EntropicPoint point;
  // Top r+1 eigenvalues of exp(log X - eta grad), shifted by a common factor
  // exp(-s_max); enough for the k = r+1 certificate, which is scale free.
  Eigen::VectorXd exp_top_values;
};

/// Low-rank MEG update (rank r, tail mass eps_next), requesting r+1
/// eigenpairs of the exponent so the certificate comes for free.
LowRankMegResult lowrank_meg_step_full(const EntropicGradientStep& step, int r,
                                       double eps_next);
EntropicPoint lowrank_meg_step(const EntropicGradientStep& step, int r,
                               double eps_next);

/// Von Neumann Bregman distance Tr(X log X - X log Y); X PSD with trace ~1
/// (0 log 0 := 0), Y strictly positive definite.
double bregman_vne(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// True iff log((n-r) lambda_{r+1} / (eps_t sum_{i<=k} lambda_i)) <= 2 eps_t,
/// evaluated on the leading spectrum of the exponentiated step matrix. True
/// certifies the approximation error of the low-rank step is at most 2 eps_t.
bool meg_certificate(const Eigen::VectorXd& exponent_top_eigs, int n, int r,
                     double eps_t, int k);

}  // namespace lrmp
