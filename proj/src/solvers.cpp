#include "lrmp/solvers.hpp"

#include <chrono>
#include <cmath>

namespace lrmp {

Method method_from_string(const std::string& name) {
  if (name == "eg") return Method::ExtragradientFull;
  if (name == "eg-lowrank") return Method::ExtragradientLowRank;
  if (name == "meg") return Method::MegFull;
  if (name == "meg-lowrank") return Method::MegLowRank;
  throw InvalidInput("unknown method: " + name);
}

std::string method_to_string(Method m) {
  switch (m) {
    case Method::ExtragradientFull: return "eg";
    case Method::ExtragradientLowRank: return "eg-lowrank";
    case Method::MegFull: return "meg";
    case Method::MegLowRank: return "meg-lowrank";
  }
  return "?";
}

namespace {

bool is_meg(Method m) {
  return m == Method::MegFull || m == Method::MegLowRank;
}

bool is_lowrank(Method m) {
  return m == Method::ExtragradientLowRank || m == Method::MegLowRank;
}

}  // namespace

struct Solver::Impl {
  const SaddleObjective& obj;
  SolverConfig cfg;
  int n;
  double tau;
  double eta;

  // Primal iterate, one representation per method family. MEG state is kept
  // at trace 1; oracles see the tau-scaled dense matrix.
  LowRankFactor x_factor, z_factor;       // extragradient methods
  DensityMatrix x_density, z_density;     // exact MEG
  EntropicPoint x_entropic, z_entropic;   // low-rank MEG

  Eigen::MatrixXd x_cache, z_cache;  // densified, trace-tau scale
  DualPoint y_pt, w_pt;

  Eigen::MatrixXd z_sum;
  Eigen::MatrixXd w_sum;
  int iter = 0;

  double eps_t = 0.0;
  bool cert_z = true, cert_x = true;

  RunRecord rec;
  std::chrono::steady_clock::time_point start;

  Impl(const SaddleObjective& objective, const SolverConfig& config,
       const LowRankFactor& x1, const DualPoint& y1)
      : obj(objective), cfg(config), n(objective.spec.n), tau(objective.spec.tau) {
    if (cfg.max_iters < 1) throw InvalidInput("SolverConfig: max_iters >= 1");
    if (is_lowrank(cfg.method) && cfg.rank_r < 1) {
      throw InvalidInput("SolverConfig: rank_r >= 1 for low-rank methods");
    }
    const SmoothnessConstants& consts =
        is_meg(cfg.method) ? obj.spectral : obj.euclidean;
    eta = cfg.eta > 0.0 ? cfg.eta
                        : (is_meg(cfg.method) ? step_size_meg(consts)
                                              : step_size_extragradient(consts));
    eta *= cfg.step_multiplier;
    if (!(eta > 0.0)) throw InvalidInput("SolverConfig: step size must be positive");

    y_pt = y1;
    if (!dual_contains(y_pt, obj.domain, 1e-8)) {
      throw InvalidInput("solver init: y1 outside the dual domain");
    }
    w_pt = y_pt;

    switch (cfg.method) {
      case Method::ExtragradientFull:
      case Method::ExtragradientLowRank:
        x_factor = x1;
        z_factor = x1;
        break;
      case Method::MegFull: {
        const double eps0 = init_eps0();
        Eigen::MatrixXd smoothed =
            (1.0 - eps0) * (x1.to_dense() / tau) +
            (eps0 / n) * Eigen::MatrixXd::Identity(n, n);
        const EigenDecomposition eig = full_eigh(SymmetricMatrix(smoothed));
        // Every true eigenvalue is >= eps0/n; anything below is roundoff.
        const Eigen::VectorXd vals = eig.values.array().max(eps0 / n);
        x_density = DensityMatrix{vals / vals.sum(), eig.vectors};
        z_density = x_density;
        break;
      }
      case Method::MegLowRank: {
        if (x1.rank() != cfg.rank_r) {
          throw InvalidInput("meg-lowrank init: rank(X0) must equal rank_r");
        }
        LowRankFactor normalized = x1;
        normalized.weights /= tau;
        x_entropic = entropic_init(normalized, init_eps0());
        z_entropic = x_entropic;
        if (auto warning = eps_schedule_warning(cfg.eps)) {
          rec.notes.push_back(*warning);
        }
        break;
      }
    }
    refresh_cache();
    z_sum = Eigen::MatrixXd::Zero(n, n);
    w_sum = Eigen::MatrixXd::Zero(y_pt.payload.rows(), y_pt.payload.cols());
    start = std::chrono::steady_clock::now();
  }

  double init_eps0() const {
    if (cfg.init_eps0 > 0.0) return cfg.init_eps0;
    const double from_schedule = eps_schedule(0, cfg.eps);
    if (!(from_schedule > 0.0)) {
      throw InvalidInput("MEG init: need a positive eps0 to reach the interior");
    }
    return from_schedule;
  }

  void refresh_cache() {
    switch (cfg.method) {
      case Method::ExtragradientFull:
      case Method::ExtragradientLowRank:
        x_cache = x_factor.to_dense();
        z_cache = z_factor.to_dense();
        break;
      case Method::MegFull:
        x_cache = tau * x_density.to_dense();
        z_cache = tau * z_density.to_dense();
        break;
      case Method::MegLowRank:
        x_cache = tau * x_entropic.to_dense();
        z_cache = tau * z_entropic.to_dense();
        break;
    }
  }

  Eigen::MatrixXd grad_x_at(const Eigen::MatrixXd& primal, const DualPoint& dual,
                            const LowRankFactor* factored = nullptr) {
    try {
      if (factored != nullptr && obj.grad_x_factored) {
        return obj.grad_x_factored(*factored, dual);
      }
      return obj.grad_x(primal, dual);
    } catch (const std::exception& e) {
      throw std::runtime_error("gradient oracle failed at t=" +
                               std::to_string(iter + 1) + ": " + e.what());
    }
  }

  // Truncated projection guarded by the eigenvalue-sum certificate; one
  // rank-(r+1) eigensolve serves both.
  LowRankFactor certified_truncated_project(const SymmetricMatrix& p, bool* cert_ok,
                                            const char* leg) {
    const int r = std::min(cfg.rank_r, n);
    const bool want_cert = cfg.certificate_mode != CertificateMode::Off && r < n;
    const int k = want_cert ? r + 1 : r;
    const EigenDecomposition eig = top_k_eigh(p, k);
    bool ok = true;
    if (want_cert) {
      ok = certificate_from_values(eig.values, r, obj.spec);
      if (!ok) {
        if (cfg.certificate_mode == CertificateMode::Assert) {
          throw CertificateViolation(iter + 1, leg);
        }
        ++rec.certificate_failures;
        rec.notes.push_back("projection certificate failed at t=" +
                            std::to_string(iter + 1) + " (" + std::string(leg) + ")");
      }
    }
    *cert_ok = ok;
    return truncated_project_from_pairs(eig.values.head(r), eig.vectors.leftCols(r),
                                        n, obj.spec);
  }

  EntropicPoint certified_meg_step(const EntropicPoint& base,
                                   const Eigen::MatrixXd& grad, bool* cert_ok,
                                   const char* leg) {
    const EntropicGradientStep step{base, SymmetricMatrix(grad), eta};
    const LowRankMegResult result = lowrank_meg_step_full(step, cfg.rank_r, eps_t);
    bool ok = true;
    if (cfg.certificate_mode != CertificateMode::Off) {
      ok = meg_certificate(result.exp_top_values, n, cfg.rank_r, eps_t,
                           cfg.rank_r + 1);
      if (!ok) {
        if (cfg.certificate_mode == CertificateMode::Assert) {
          throw CertificateViolation(iter + 1, leg);
        }
        ++rec.certificate_failures;
        rec.notes.push_back("meg certificate failed at t=" + std::to_string(iter + 1) +
                            " (" + std::string(leg) + ")");
      }
    }
    *cert_ok = ok;
    return result.point;
  }

  int rank_of_primal(bool leading) const {
    switch (cfg.method) {
      case Method::ExtragradientFull:
      case Method::ExtragradientLowRank:
        return leading ? z_factor.rank() : x_factor.rank();
      case Method::MegFull:
        return n;
      case Method::MegLowRank:
        return cfg.rank_r;
    }
    return 0;
  }

  void step() {
    const bool factored_state = !is_meg(cfg.method);
    const Eigen::MatrixXd gx =
        grad_x_at(x_cache, y_pt, factored_state ? &x_factor : nullptr);
    const Eigen::MatrixXd gy = obj.grad_y(x_cache, y_pt);
    cert_z = cert_x = true;

    switch (cfg.method) {
      case Method::ExtragradientFull: {
        z_factor = project(SymmetricMatrix(x_cache - eta * gx), obj.spec);
        break;
      }
      case Method::ExtragradientLowRank: {
        z_factor = certified_truncated_project(SymmetricMatrix(x_cache - eta * gx),
                                               &cert_z, "Z-leg");
        break;
      }
      case Method::MegFull: {
        z_density = exact_meg_step_dense(x_density.log_dense(), SymmetricMatrix(gx),
                                         eta);
        break;
      }
      case Method::MegLowRank: {
        eps_t = eps_schedule(iter + 1, cfg.eps);
        z_entropic = certified_meg_step(x_entropic, gx, &cert_z, "Z-leg");
        break;
      }
    }
    w_pt = dual_project(y_pt.payload + eta * gy, obj.domain);

    Eigen::MatrixXd z_new;
    switch (cfg.method) {
      case Method::ExtragradientFull:
      case Method::ExtragradientLowRank:
        z_new = z_factor.to_dense();
        break;
      case Method::MegFull:
        z_new = tau * z_density.to_dense();
        break;
      case Method::MegLowRank:
        z_new = tau * z_entropic.to_dense();
        break;
    }

    const Eigen::MatrixXd gxz =
        grad_x_at(z_new, w_pt, factored_state ? &z_factor : nullptr);
    const Eigen::MatrixXd gyz = obj.grad_y(z_new, w_pt);

    switch (cfg.method) {
      case Method::ExtragradientFull: {
        x_factor = project(SymmetricMatrix(x_cache - eta * gxz), obj.spec);
        break;
      }
      case Method::ExtragradientLowRank: {
        x_factor = certified_truncated_project(SymmetricMatrix(x_cache - eta * gxz),
                                               &cert_x, "X-leg");
        break;
      }
      case Method::MegFull: {
        x_density = exact_meg_step_dense(x_density.log_dense(), SymmetricMatrix(gxz),
                                         eta);
        break;
      }
      case Method::MegLowRank: {
        x_entropic = certified_meg_step(x_entropic, gxz, &cert_x, "X-leg");
        break;
      }
    }
    y_pt = dual_project(y_pt.payload + eta * gyz, obj.domain);

    z_cache = z_new;
    switch (cfg.method) {
      case Method::ExtragradientFull:
      case Method::ExtragradientLowRank:
        x_cache = x_factor.to_dense();
        break;
      case Method::MegFull:
        x_cache = tau * x_density.to_dense();
        break;
      case Method::MegLowRank:
        x_cache = tau * x_entropic.to_dense();
        break;
    }

    ++iter;
    z_sum += z_cache;
    w_sum += w_pt.payload;

    if (cfg.gap_check_every > 0 && (iter % cfg.gap_check_every == 0)) {
      IterRow row;
      row.t = iter;
      row.dual_gap = dual_gap(obj, SaddleCandidate{z_cache, w_pt});
      row.primal_rank = rank_of_primal(true);
      row.certificate_pass = cert_z && cert_x;
      row.objective = obj.objective ? obj.objective(z_cache) :
                      obj.value(z_cache, w_pt);
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      if (row.dual_gap < rec.best_gap) {
        rec.best_gap = row.dual_gap;
        rec.best_iterate_index = iter;
        rec.best_z = z_cache;
        rec.best_w = w_pt;
      }
      rec.rows.push_back(row);
    }
  }
};

Solver::Solver(const SaddleObjective& obj, const SolverConfig& config,
               const LowRankFactor& x1, const DualPoint& y1)
    : impl_(std::make_unique<Impl>(obj, config, x1, y1)) {}
Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;

void Solver::step() { impl_->step(); }
int Solver::t() const { return impl_->iter; }
const Eigen::MatrixXd& Solver::x_dense() const { return impl_->x_cache; }
const Eigen::MatrixXd& Solver::z_dense() const { return impl_->z_cache; }
const DualPoint& Solver::y() const { return impl_->y_pt; }
const DualPoint& Solver::w() const { return impl_->w_pt; }
int Solver::x_rank() const { return impl_->rank_of_primal(false); }
int Solver::z_rank() const { return impl_->rank_of_primal(true); }
double Solver::last_eps() const { return impl_->eps_t; }
bool Solver::last_cert_z() const { return impl_->cert_z; }
bool Solver::last_cert_x() const { return impl_->cert_x; }
RunRecord& Solver::record() { return impl_->rec; }
const RunRecord& Solver::record() const { return impl_->rec; }

SolverState Solver::state() const {
  SolverState s;
  s.x_dense = impl_->x_cache;
  s.z_dense = impl_->z_cache;
  s.y = impl_->y_pt;
  s.w = impl_->w_pt;
  s.t = impl_->iter;
  if (impl_->iter > 0) {
    s.z_avg = impl_->z_sum / impl_->iter;
    s.w_avg = DualPoint{impl_->w_sum / impl_->iter};
  } else {
    s.z_avg = impl_->z_cache;
    s.w_avg = impl_->w_pt;
  }
  return s;
}

RunOutput run_solver(const SaddleObjective& obj, const SolverConfig& config,
                     const LowRankFactor& x1, const DualPoint& y1) {
  Solver solver(obj, config, x1, y1);
  for (int t = 0; t < config.max_iters; ++t) solver.step();
  return RunOutput{solver.state(), solver.record()};
}

namespace {

RunOutput run_as(const SaddleObjective& obj, SolverConfig config, Method method,
                 const LowRankFactor& x1, const DualPoint& y1) {
  config.method = method;
  return run_solver(obj, config, x1, y1);
}

}  // namespace

RunOutput run_extragradient(const SaddleObjective& obj, const SolverConfig& config,
                            const LowRankFactor& x1, const DualPoint& y1) {
  return run_as(obj, config, Method::ExtragradientFull, x1, y1);
}

RunOutput run_extragradient_lowrank(const SaddleObjective& obj,
                                    const SolverConfig& config,
                                    const LowRankFactor& x1, const DualPoint& y1) {
  return run_as(obj, config, Method::ExtragradientLowRank, x1, y1);
}

RunOutput run_meg_mirror_prox(const SaddleObjective& obj, const SolverConfig& config,
                              const LowRankFactor& x1, const DualPoint& y1) {
  return run_as(obj, config, Method::MegFull, x1, y1);
}

RunOutput run_meg_mirror_prox_lowrank(const SaddleObjective& obj,
                                      const SolverConfig& config,
                                      const LowRankFactor& x1, const DualPoint& y1) {
  return run_as(obj, config, Method::MegLowRank, x1, y1);
}

}  // namespace lrmp
