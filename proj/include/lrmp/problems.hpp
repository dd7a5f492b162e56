#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrmp/solvers.hpp"

namespace lrmp {

enum class Family { SparsePCA, LowRankSparse, RobustPCA, LinConstrained, LeastSquaresL1 };
enum class NoiseKind { GaussianShifted, Uniform01, SparseSign };

Family family_from_string(const std::string& name);
std::string family_to_string(Family f);
NoiseKind noise_from_string(const std::string& name);
std::string noise_to_string(NoiseKind k);

struct InstanceSpec {
  Family family = Family::SparsePCA;
  int n = 100;
  int rank_gt = 1;
  double snr = 1.0;
  NoiseKind noise_kind = NoiseKind::Uniform01;
  double lambda = 0.0;  // 0: family default for this n
  double tau = 0.0;     // 0: family default
  int m = 0;            // 0: family default (operator families)
  int op_rank = 1;      // rank of each measurement matrix (least-squares family)
  std::uint64_t seed = 0;
};

// A(X) = (<A_1,X>, ..., <A_m,X>) with A_i = V_i V_i^T stored by its factor.
struct MeasurementOperator {
  std::vector<Eigen::MatrixXd> factors;  // each n x k

  int m() const { return static_cast<int>(factors.size()); }
  Eigen::VectorXd apply(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd adjoint(const Eigen::VectorXd& y) const;
  double op_norm(int n) const;           // sup ||A(X)||_2 / ||X||_F
  double sum_sq_spectral() const;        // sum_i ||A_i||_2^2
};

struct Instance {
  SaddleObjective objective;
  Eigen::MatrixXd ground_truth;            // M0
  Eigen::MatrixXd observed;                // M, for the dense families
  MeasurementOperator op;                  // operator families
  Eigen::VectorXd rhs;                     // b
  LowRankFactor x1;
  DualPoint y1;
  InstanceSpec meta;                       // with defaults resolved
  int resample_count = 0;
};

/// Fill lambda/tau/m defaults for the family; called by every generator.
InstanceSpec resolve_defaults(InstanceSpec spec);

Instance generate(const InstanceSpec& spec);

Instance gen_sparse_pca(const InstanceSpec& spec);
Instance gen_lowrank_sparse(const InstanceSpec& spec);
Instance gen_robust_pca(const InstanceSpec& spec);
Instance gen_linconstrained(const InstanceSpec& spec);
Instance gen_least_squares_l1(const InstanceSpec& spec);

/// Rebuild the oracle bundle from stored data (used after deserialization).
void attach_objective(Instance& inst);

struct CounterexampleResult {
  int projected_rank = 0;      // rank after the sign-subgradient step (>= 2)
  int optimal_step_rank = 0;   // rank after the optimality-certifying step (1)
  Eigen::VectorXd projected_weights;
  double threshold = 0.0;
};

/// Projected subgradient step on the sparse-PCA toy from a warm start: the
/// natural sign subgradient provably inflates the rank, while the
/// optimality-certifying subgradient keeps it at one.
CounterexampleResult counterexample_demo(int n, int k, double eta);

struct RecoveryMetrics {
  double init_error = 0.0;
  double recovery_error = 0.0;
  double eigengap = 0.0;
  double dual_gap_at_best = 0.0;
  int solution_rank = 0;
};

/// Errors use the (Tr(M0)/tau) rescale; the eigengap is the
/// strict-complementarity gap of grad_X f at the best-gap candidate.
RecoveryMetrics recovery_metrics(const Instance& inst, const Eigen::MatrixXd& best_z,
                                 const DualPoint& best_w, double best_gap);

}  // namespace lrmp
