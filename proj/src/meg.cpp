#include "lrmp/meg.hpp"

#include <cmath>

namespace lrmp {

Eigen::MatrixXd EntropicPoint::to_dense() const {
  const Eigen::MatrixXd vvt = vectors * vectors.transpose();
  Eigen::MatrixXd out = (1.0 - eps) * vectors * weights.asDiagonal() * vectors.transpose();
  out += (eps / (n - r())) * (Eigen::MatrixXd::Identity(n, n) - vvt);
  return out;
}

EntropicPoint entropic_init(const LowRankFactor& x0, double eps0) {
  if (x0.rank() < 1 || x0.rank() >= x0.n) {
    throw InvalidInput("entropic_init: need 1 <= rank(X0) < n");
  }
  if (!(eps0 > 0.0) || eps0 > 1.0) {
    throw InvalidInput("entropic_init: eps0 must lie in (0, 1]");
  }
  if (std::abs(x0.trace() - 1.0) > 1e-8) {
    throw InvalidInput("entropic_init: X0 must have unit trace");
  }
  const int n = x0.n;
  const int r = x0.rank();
  // (1-eps0) X0 + (eps0/n) I spreads eps0/n over all n directions; fold the
  // top-r share into the weights so one representation covers both phases.
  const double eps = eps0 * (n - r) / n;
  EntropicPoint out;
  out.n = n;
  out.eps = eps;
  out.weights = ((1.0 - eps0) * x0.weights.array() + eps0 / n) / (1.0 - eps);
  out.vectors = x0.vectors;
  return out;
}

Eigen::MatrixXd log_factored(const EntropicPoint& x) {
  if (!(x.eps > 0.0) || x.eps >= 1.0) {
    throw SingularLog("log_factored: point is rank-deficient (eps outside (0,1))");
  }
  const int n = x.n;
  const Eigen::MatrixXd vvt = x.vectors * x.vectors.transpose();
  const Eigen::VectorXd log_top = ((1.0 - x.eps) * x.weights.array()).log();
  Eigen::MatrixXd out = x.vectors * log_top.asDiagonal() * x.vectors.transpose();
  out += std::log(x.eps / (n - x.r())) * (Eigen::MatrixXd::Identity(n, n) - vvt);
  return out;
}

DensityMatrix exact_meg_step_dense(const Eigen::MatrixXd& log_x,
                                   const SymmetricMatrix& gradient, double eta) {
  if (!(eta >= 0.0)) throw InvalidInput("meg step: eta must be non-negative");
  if (!gradient.mat().allFinite()) throw InvalidInput("meg step: non-finite gradient");
  const SymmetricMatrix exponent(log_x - eta * gradient.mat());
  const EigenDecomposition eig = full_eigh(exponent);
  const double shift = eig.values[0];
  // Floor far below any meaningful mass keeps the point loggable when the
  // exponent spread exceeds what exp() can resolve.
  Eigen::VectorXd vals = (eig.values.array() - shift).exp().max(1e-300);
  vals /= vals.sum();
  return DensityMatrix{vals, eig.vectors};
}

DensityMatrix exact_meg_step(const EntropicGradientStep& step) {
  return exact_meg_step_dense(log_factored(step.base), step.gradient, step.eta);
}

LowRankMegResult lowrank_meg_step_full(const EntropicGradientStep& step, int r,
                                       double eps_next) {
  const int n = step.base.n;
  if (r < 1 || r >= n) throw InvalidInput("lowrank_meg_step: need 1 <= r < n");
  if (eps_next < 0.0 || eps_next > 1.0) {
    throw InvalidInput("lowrank_meg_step: eps_next must lie in [0, 1]");
  }
  if (!step.gradient.mat().allFinite()) {
    throw InvalidInput("lowrank_meg_step: non-finite gradient");
  }
  const SymmetricMatrix exponent(log_factored(step.base) -
                                 step.eta * step.gradient.mat());
  const EigenDecomposition eig = top_k_eigh(exponent, r + 1);
  const double shift = eig.values[0];
  const Eigen::VectorXd exp_vals =
      (eig.values.array() - shift).exp().max(1e-300);

  LowRankMegResult out;
  out.exp_top_values = exp_vals;
  out.point.n = n;
  out.point.eps = eps_next;
  out.point.weights = exp_vals.head(r) / exp_vals.head(r).sum();
  out.point.vectors = eig.vectors.leftCols(r);
  return out;
}

EntropicPoint lowrank_meg_step(const EntropicGradientStep& step, int r,
                               double eps_next) {
  return lowrank_meg_step_full(step, r, eps_next).point;
}

double bregman_vne(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  const EigenDecomposition ex = full_eigh(SymmetricMatrix(x));
  const EigenDecomposition ey = full_eigh(SymmetricMatrix(y));
  if (ey.values.minCoeff() <= 0.0) {
    throw SingularLog("bregman_vne: second argument must be positive definite");
  }
  double entropy = 0.0;  // Tr(X log X), with 0 log 0 := 0
  for (int i = 0; i < ex.values.size(); ++i) {
    if (ex.values[i] > 0.0) entropy += ex.values[i] * std::log(ex.values[i]);
  }
  const Eigen::MatrixXd log_y = ey.vectors *
                                ey.values.array().log().matrix().asDiagonal() *
                                ey.vectors.transpose();
  return entropy - (x.array() * log_y.array()).sum();
}

bool meg_certificate(const Eigen::VectorXd& exponent_top_eigs, int n, int r,
                     double eps_t, int k) {
  if (!(eps_t > 0.0)) throw InvalidInput("meg_certificate: eps_t must be positive");
  if (k < r + 1 || exponent_top_eigs.size() < k) {
    throw InvalidInput("meg_certificate: need k >= r+1 available eigenvalues");
  }
  const double partial_trace = exponent_top_eigs.head(k).sum();
  const double ratio = (n - r) * exponent_top_eigs[r] / (eps_t * partial_trace);
  return std::log(ratio) <= 2.0 * eps_t;
}

}  // namespace lrmp
