#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lrmp/saddle.hpp"

namespace lrmp {

enum class Method { ExtragradientFull, ExtragradientLowRank, MegFull, MegLowRank };
enum class CertificateMode { Assert, Record, Off };

Method method_from_string(const std::string& name);
std::string method_to_string(Method m);

struct SolverConfig {
  Method method = Method::ExtragradientFull;
  int rank_r = 1;                // low-rank methods
  double eta = 0.0;              // 0: derive from the smoothness constants
  double step_multiplier = 1.0;  // applied on top of eta for sweep runs
  int max_iters = 100;
  EpsScheduleParams eps;         // MegLowRank approximation schedule
  double init_eps0 = 0.0;        // MEG interior smoothing; 0: eps_schedule(0)
  CertificateMode certificate_mode = CertificateMode::Record;
  int gap_check_every = 1;       // 0 disables dual-gap evaluation
};

struct IterRow {
  int t = 0;
  double dual_gap = 0.0;
  int primal_rank = 0;
  bool certificate_pass = true;
  double objective = 0.0;
  double wall_ms = 0.0;
};

struct RunRecord {
  std::vector<IterRow> rows;
  double best_gap = std::numeric_limits<double>::infinity();
  int best_iterate_index = -1;
  Eigen::MatrixXd best_z;
  DualPoint best_w;
  long certificate_failures = 0;
  std::vector<std::string> notes;
};

struct SolverState {
  Eigen::MatrixXd x_dense;
  Eigen::MatrixXd z_dense;
  DualPoint y;
  DualPoint w;
  Eigen::MatrixXd z_avg;
  DualPoint w_avg;
  int t = 0;
};

// One mirror-prox iteration owner. The primal legs are either Euclidean
// projections (full or rank-r truncated with the eigenvalue certificate) or
// MEG updates (exact or rank-r approximated with the spectral certificate);
// dual legs are always exact Euclidean steps onto K. Deterministic:
// identical inputs advance through identical states.
class Solver {
 public:
  Solver(const SaddleObjective& obj, const SolverConfig& config,
         const LowRankFactor& x1, const DualPoint& y1);
  ~Solver();
  Solver(Solver&&) noexcept;

  void step();
  int t() const;

  const Eigen::MatrixXd& x_dense() const;  // trace-tau scale
  const Eigen::MatrixXd& z_dense() const;
  const DualPoint& y() const;
  const DualPoint& w() const;
  int x_rank() const;
  int z_rank() const;

  double last_eps() const;      // eps_t used at the latest iteration
  bool last_cert_z() const;     // per-leg certificate outcomes
  bool last_cert_x() const;

  SolverState state() const;    // includes running averages of (Z, w)
  RunRecord& record();
  const RunRecord& record() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct RunOutput {
  SolverState state;
  RunRecord record;
};

RunOutput run_solver(const SaddleObjective& obj, const SolverConfig& config,
                     const LowRankFactor& x1, const DualPoint& y1);

/// Projected extragradient with exact projections.
RunOutput run_extragradient(const SaddleObjective& obj, const SolverConfig& config,
                            const LowRankFactor& x1, const DualPoint& y1);

/// Extragradient with rank-r truncated projections; each projection is
/// preceded by the eigenvalue-sum certificate under the configured mode.
RunOutput run_extragradient_lowrank(const SaddleObjective& obj,
                                    const SolverConfig& config,
                                    const LowRankFactor& x1, const DualPoint& y1);

/// Mirror-prox with exact matrix-exponentiated-gradient primal updates.
RunOutput run_meg_mirror_prox(const SaddleObjective& obj, const SolverConfig& config,
                              const LowRankFactor& x1, const DualPoint& y1);

/// Mirror-prox with rank-r approximated MEG updates and the eps_t schedule;
/// primal state never leaves the factored form outside gradient oracles.
RunOutput run_meg_mirror_prox_lowrank(const SaddleObjective& obj,
                                      const SolverConfig& config,
                                      const LowRankFactor& x1, const DualPoint& y1);

}  // namespace lrmp
