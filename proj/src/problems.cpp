#include "lrmp/problems.hpp"

#include <cmath>
#include <memory>

namespace lrmp {

Family family_from_string(const std::string& name) {
  if (name == "sparse-pca") return Family::SparsePCA;
  if (name == "lowrank-sparse") return Family::LowRankSparse;
  if (name == "robust-pca") return Family::RobustPCA;
  if (name == "lin-constrained") return Family::LinConstrained;
  if (name == "least-squares-l1") return Family::LeastSquaresL1;
  throw InvalidInput("unknown family: " + name);
}

std::string family_to_string(Family f) {
  switch (f) {
    case Family::SparsePCA: return "sparse-pca";
    case Family::LowRankSparse: return "lowrank-sparse";
    case Family::RobustPCA: return "robust-pca";
    case Family::LinConstrained: return "lin-constrained";
    case Family::LeastSquaresL1: return "least-squares-l1";
  }
  return "?";
}

NoiseKind noise_from_string(const std::string& name) {
  if (name == "gaussian") return NoiseKind::GaussianShifted;
  if (name == "uniform") return NoiseKind::Uniform01;
  if (name == "sign") return NoiseKind::SparseSign;
  throw InvalidInput("unknown noise kind: " + name);
}

std::string noise_to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::GaussianShifted: return "gaussian";
    case NoiseKind::Uniform01: return "uniform";
    case NoiseKind::SparseSign: return "sign";
  }
  return "?";
}

Eigen::VectorXd MeasurementOperator::apply(const Eigen::MatrixXd& x) const {
  Eigen::VectorXd out(m());
  for (int i = 0; i < m(); ++i) {
    const Eigen::MatrixXd& v = factors[i];
    out[i] = (v.array() * (x * v).array()).sum();
  }
  return out;
}

Eigen::MatrixXd MeasurementOperator::adjoint(const Eigen::VectorXd& y) const {
  const int n = static_cast<int>(factors.front().rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < m(); ++i) {
    out.noalias() += y[i] * factors[i] * factors[i].transpose();
  }
  return out;
}

double MeasurementOperator::op_norm(int n) const {
  // Power iteration for the top singular value of X -> A(X) on symmetric X.
  Eigen::MatrixXd x = adjoint(Eigen::VectorXd::Ones(m()));
  x /= x.norm();
  double rayleigh = 0.0;
  for (int it = 0; it < 80; ++it) {
    const Eigen::MatrixXd next = adjoint(apply(x));
    const double next_rayleigh = (x.array() * next.array()).sum();
    x = next / next.norm();
    if (it > 4 && std::abs(next_rayleigh - rayleigh) <= 1e-12 * next_rayleigh) {
      rayleigh = next_rayleigh;
      break;
    }
    rayleigh = next_rayleigh;
  }
  (void)n;
  return std::sqrt(rayleigh);
}

double MeasurementOperator::sum_sq_spectral() const {
  double total = 0.0;
  for (const Eigen::MatrixXd& v : factors) {
    // ||V V^T||_2 = lambda_max(V^T V)
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram(v.transpose() * v);
    const double top = gram.eigenvalues().maxCoeff();
    total += top * top;
  }
  return total;
}

namespace {

Eigen::MatrixXd sign_of(const Eigen::MatrixXd& a) {
  return a.unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
}

Eigen::MatrixXd draw_noise(Rng& rng, int n, NoiseKind kind) {
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      switch (kind) {
        case NoiseKind::GaussianShifted: out(i, j) = rng.normal(0.5, 1.0); break;
        case NoiseKind::Uniform01: out(i, j) = rng.uniform01(); break;
        case NoiseKind::SparseSign:
          out(i, j) = rng.bernoulli(1.0 / std::sqrt(static_cast<double>(n)))
                          ? (rng.bernoulli(0.5) ? 1.0 : -1.0)
                          : 0.0;
          break;
      }
    }
  }
  return out;
}

Eigen::MatrixXd draw_gaussian(Rng& rng, int rows, int cols, double mean = 0.0) {
  Eigen::MatrixXd out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = rng.normal(mean, 1.0);
  return out;
}

// Sparse factor with entries 0 w.p. 0.9 and U{1..10} (or standard Gaussian)
// otherwise, resampled until every ground-truth eigendirection survives.
Eigen::MatrixXd draw_sparse_factor(Rng& rng, int n, int r, bool gaussian_values,
                                   int* resamples) {
  while (true) {
    Eigen::MatrixXd z(n, r);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < r; ++j) {
        if (rng.bernoulli(0.9)) {
          z(i, j) = 0.0;
        } else {
          z(i, j) = gaussian_values
                        ? rng.normal()
                        : static_cast<double>(rng.uniform_int(1, 10));
        }
      }
    }
    const double norm = z.norm();
    if (norm > 0.0) {
      z /= norm;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram(z.transpose() * z);
      if (gram.eigenvalues().minCoeff() > 1e-10 * gram.eigenvalues().maxCoeff()) {
        return z;
      }
    }
    ++(*resamples);
  }
}

double default_lambda(const InstanceSpec& s) {
  switch (s.family) {
    case Family::SparsePCA:
      if (s.noise_kind == NoiseKind::GaussianShifted) {
        return (s.snr >= 0.5 ? 0.6 : 4.0) / s.n;
      }
      return (s.snr >= 0.5 ? 0.8 : 4.0) / s.n;
    case Family::LowRankSparse: return 0.12 / s.n;
    case Family::RobustPCA: return 0.0;
    case Family::LinConstrained: return 2.0;
    case Family::LeastSquaresL1: return 0.001;
  }
  return 0.0;
}

double default_tau(const InstanceSpec& s) {
  switch (s.family) {
    case Family::SparsePCA: return 1.0;
    case Family::LowRankSparse: return 0.7;          // Tr(Z0 Z0^T) = 1
    case Family::RobustPCA: return 0.95 * s.rank_gt;  // Tr(r Z0 Z0^T) = r
    case Family::LinConstrained: return 1.0;
    case Family::LeastSquaresL1: return 0.5 * s.n;    // Tr(n Z0 Z0^T) = n
  }
  return 1.0;
}

int default_m(const InstanceSpec& s) {
  switch (s.family) {
    case Family::LinConstrained: return s.n;
    case Family::LeastSquaresL1: return 25 * s.n * s.rank_gt;
    default: return 0;
  }
}

struct OracleData {
  Eigen::MatrixXd m;
  MeasurementOperator op;
  Eigen::VectorXd b;
  double lambda = 0.0;
};

}  // namespace

InstanceSpec resolve_defaults(InstanceSpec spec) {
  if (spec.n < 2) throw InvalidInput("InstanceSpec: n >= 2");
  if (spec.rank_gt < 1) throw InvalidInput("InstanceSpec: rank_gt >= 1");
  if (spec.lambda == 0.0) spec.lambda = default_lambda(spec);
  if (spec.tau == 0.0) spec.tau = default_tau(spec);
  if (spec.m == 0) spec.m = default_m(spec);
  return spec;
}

void attach_objective(Instance& inst) {
  const InstanceSpec& s = inst.meta;
  const int n = s.n;
  const double lambda = s.lambda;
  const double tau = s.tau;
  SaddleObjective& obj = inst.objective;
  obj.spec = SpectrahedronSpec{n, tau};

  auto data = std::make_shared<const OracleData>(
      OracleData{inst.observed, inst.op, inst.rhs, lambda});

  switch (s.family) {
    case Family::SparsePCA:
    case Family::LowRankSparse: {
      const bool quadratic = s.family == Family::LowRankSparse;
      obj.domain = DualDomain{DualDomainKind::InfinityBallMatrix, n};
      obj.grad_x = [data, quadratic](const Eigen::MatrixXd& x, const DualPoint& y) {
        Eigen::MatrixXd g = data->lambda * y.payload - data->m;
        if (quadratic) g += x;
        return g;
      };
      obj.grad_y = [data](const Eigen::MatrixXd& x, const DualPoint&) {
        return Eigen::MatrixXd(data->lambda * x);
      };
      obj.value = [data, quadratic](const Eigen::MatrixXd& x, const DualPoint& y) {
        const double coupling = data->lambda * dual_dot(x, y.payload);
        if (quadratic) return 0.5 * (x - data->m).squaredNorm() + coupling;
        return -dual_dot(x, data->m) + coupling;
      };
      obj.objective = [data, quadratic](const Eigen::MatrixXd& x) {
        const double reg = data->lambda * x.array().abs().sum();
        if (quadratic) return 0.5 * (x - data->m).squaredNorm() + reg;
        return -dual_dot(x, data->m) + reg;
      };
      if (!quadratic) {
        // The gradient never reads X; register the factored route as-is.
        obj.grad_x_factored = [data](const LowRankFactor&, const DualPoint& y) {
          return Eigen::MatrixXd(data->lambda * y.payload - data->m);
        };
      }
      const double beta_x = quadratic ? 1.0 : 0.0;
      const double y_frob_bound = n;  // ||Y||_F <= n on the infinity ball
      const double g_euc = (quadratic ? tau + data->m.norm() : data->m.norm()) +
                           lambda * y_frob_bound;
      obj.euclidean = {beta_x, 0.0, lambda, lambda, g_euc};
      const double m_spec =
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(data->m)
              .eigenvalues()
              .cwiseAbs()
              .maxCoeff();
      const double g_spec = (quadratic ? tau + m_spec : m_spec) + lambda * y_frob_bound;
      obj.spectral = {beta_x, 0.0, lambda, lambda, g_spec};
      break;
    }
    case Family::RobustPCA: {
      obj.domain = DualDomain{DualDomainKind::InfinityBallMatrix, n};
      obj.grad_x = [](const Eigen::MatrixXd&, const DualPoint& y) {
        return y.payload;
      };
      obj.grad_y = [data](const Eigen::MatrixXd& x, const DualPoint&) {
        return Eigen::MatrixXd(x - data->m);
      };
      obj.value = [data](const Eigen::MatrixXd& x, const DualPoint& y) {
        return dual_dot(x - data->m, y.payload);
      };
      obj.objective = [data](const Eigen::MatrixXd& x) {
        return (x - data->m).array().abs().sum();
      };
      obj.grad_x_factored = [](const LowRankFactor&, const DualPoint& y) {
        return y.payload;
      };
      const double g_bound = n;  // sup ||Y||_F over the infinity ball
      obj.euclidean = {0.0, 0.0, 1.0, 1.0, g_bound};
      obj.spectral = {0.0, 0.0, 1.0, 1.0, g_bound};
      break;
    }
    case Family::LinConstrained: {
      obj.domain = DualDomain{DualDomainKind::L2Ball, s.m};
      obj.grad_x = [data](const Eigen::MatrixXd&, const DualPoint& y) {
        return Eigen::MatrixXd(data->lambda * data->op.adjoint(y.payload.col(0)) -
                               data->m);
      };
      obj.grad_y = [data](const Eigen::MatrixXd& x, const DualPoint&) {
        return Eigen::MatrixXd(data->lambda * (data->op.apply(x) - data->b));
      };
      obj.value = [data](const Eigen::MatrixXd& x, const DualPoint& y) {
        return -dual_dot(x, data->m) +
               data->lambda * (data->op.apply(x) - data->b).dot(y.payload.col(0));
      };
      obj.objective = [data](const Eigen::MatrixXd& x) {
        return -dual_dot(x, data->m) +
               data->lambda * (data->op.apply(x) - data->b).norm();
      };
      const double a_op = inst.op.op_norm(n);
      const double g_euc = data->m.norm() + lambda * a_op;
      obj.euclidean = {0.0, 0.0, lambda * a_op, lambda * a_op, g_euc};
      const double a_spec = std::sqrt(inst.op.sum_sq_spectral());
      const double m_spec =
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(data->m)
              .eigenvalues()
              .cwiseAbs()
              .maxCoeff();
      obj.spectral = {0.0, 0.0, lambda * a_spec, lambda * a_spec,
                      m_spec + lambda * a_spec};
      break;
    }
    case Family::LeastSquaresL1: {
      obj.domain = DualDomain{DualDomainKind::InfinityBallMatrix, n};
      obj.grad_x = [data](const Eigen::MatrixXd& x, const DualPoint& y) {
        return Eigen::MatrixXd(data->op.adjoint(data->op.apply(x) - data->b) +
                               data->lambda * y.payload);
      };
      obj.grad_y = [data](const Eigen::MatrixXd& x, const DualPoint&) {
        return Eigen::MatrixXd(data->lambda * x);
      };
      obj.value = [data](const Eigen::MatrixXd& x, const DualPoint& y) {
        return 0.5 * (data->op.apply(x) - data->b).squaredNorm() +
               data->lambda * dual_dot(x, y.payload);
      };
      obj.objective = [data](const Eigen::MatrixXd& x) {
        return 0.5 * (data->op.apply(x) - data->b).squaredNorm() +
               data->lambda * x.array().abs().sum();
      };
      const double a_op = inst.op.op_norm(n);
      const double resid_bound = a_op * tau + data->b.norm();
      const double g_euc = a_op * resid_bound + lambda * n;
      obj.euclidean = {a_op * a_op, 0.0, lambda, lambda, g_euc};
      const double a_ss = inst.op.sum_sq_spectral();
      obj.spectral = {a_ss, 0.0, lambda, lambda, g_euc};
      break;
    }
  }
}

Instance gen_sparse_pca(const InstanceSpec& raw) {
  InstanceSpec s = resolve_defaults(raw);
  if (s.family != Family::SparsePCA) throw InvalidInput("family mismatch");
  Instance inst;
  inst.meta = s;
  const int n = s.n;
  Rng root(s.seed);
  Rng z_rng = root.stream(0);
  Rng noise_rng = root.stream(1);

  const Eigen::VectorXd z =
      draw_sparse_factor(z_rng, n, 1, /*gaussian_values=*/false,
                         &inst.resample_count)
          .col(0);
  inst.ground_truth = z * z.transpose();

  const Eigen::MatrixXd noise = draw_noise(noise_rng, n, s.noise_kind);
  const Eigen::MatrixXd sym_noise = noise + noise.transpose();
  // snr is the squared norm ratio ||M0||_F^2 / ||noise||_F^2 of the data.
  const double c =
      2.0 * inst.ground_truth.norm() / (std::sqrt(s.snr) * sym_noise.norm());
  inst.observed = inst.ground_truth + 0.5 * c * sym_noise;

  attach_objective(inst);

  const EigenDecomposition top = top_k_eigh(SymmetricMatrix(inst.observed), 1);
  inst.x1 = LowRankFactor{n, Eigen::VectorXd::Constant(1, s.tau), top.vectors};
  inst.y1 = DualPoint{sign_of(inst.x1.to_dense())};
  return inst;
}

Instance gen_lowrank_sparse(const InstanceSpec& raw) {
  InstanceSpec s = resolve_defaults(raw);
  if (s.family != Family::LowRankSparse) throw InvalidInput("family mismatch");
  Instance inst;
  inst.meta = s;
  const int n = s.n;
  Rng root(s.seed);
  Rng z_rng = root.stream(0);
  Rng noise_rng = root.stream(1);

  const Eigen::MatrixXd z0 = draw_sparse_factor(
      z_rng, n, s.rank_gt, /*gaussian_values=*/false, &inst.resample_count);
  inst.ground_truth = z0 * z0.transpose();

  // Zero-mean Gaussian noise: a mean shift here would plant a rank-one bias
  // that empirically destroys the low-rank recovery regime; any variance is
  // absorbed by the snr calibration below.
  const Eigen::MatrixXd noise = draw_gaussian(noise_rng, n, n);
  const Eigen::MatrixXd sym_noise = noise + noise.transpose();
  const double c =
      2.0 * inst.ground_truth.norm() / (std::sqrt(s.snr) * sym_noise.norm());
  inst.observed = inst.ground_truth + 0.5 * c * sym_noise;

  attach_objective(inst);

  inst.x1 = truncated_project(SymmetricMatrix(inst.observed), s.rank_gt,
                              inst.objective.spec);
  inst.y1 = DualPoint{sign_of(inst.x1.to_dense())};
  return inst;
}

Instance gen_robust_pca(const InstanceSpec& raw) {
  InstanceSpec s = resolve_defaults(raw);
  if (s.family != Family::RobustPCA) throw InvalidInput("family mismatch");
  Instance inst;
  const int n = s.n;
  Rng root(s.seed);
  Rng z_rng = root.stream(0);
  Rng noise_rng = root.stream(1);

  Eigen::MatrixXd z0 = draw_gaussian(z_rng, n, s.rank_gt);
  z0 /= z0.norm();
  inst.ground_truth = s.rank_gt * z0 * z0.transpose();

  const Eigen::MatrixXd noise = draw_noise(noise_rng, n, NoiseKind::SparseSign);
  const Eigen::MatrixXd corruption = 0.5 * (noise + noise.transpose());
  inst.observed = inst.ground_truth + corruption;

  // SNR is an outcome of the corruption model, not a knob.
  s.snr = inst.ground_truth.squaredNorm() / corruption.squaredNorm();
  inst.meta = s;

  attach_objective(inst);

  inst.x1 = project(SymmetricMatrix(inst.observed), inst.objective.spec);
  inst.y1 = DualPoint{sign_of(inst.x1.to_dense() - inst.observed)};
  return inst;
}

Instance gen_linconstrained(const InstanceSpec& raw) {
  InstanceSpec s = resolve_defaults(raw);
  if (s.family != Family::LinConstrained) throw InvalidInput("family mismatch");
  Instance inst;
  inst.meta = s;
  const int n = s.n;
  Rng root(s.seed);
  Rng z_rng = root.stream(0);
  Rng noise_rng = root.stream(1);
  Rng op_rng = root.stream(2);

  Eigen::VectorXd z0 = draw_gaussian(z_rng, n, 1).col(0);
  z0.normalize();
  inst.ground_truth = z0 * z0.transpose();

  const Eigen::MatrixXd noise = draw_gaussian(noise_rng, n, n);
  const Eigen::MatrixXd sym_noise = noise + noise.transpose();
  const double c =
      2.0 * inst.ground_truth.norm() / (std::sqrt(s.snr) * sym_noise.norm());
  inst.observed = inst.ground_truth + 0.5 * c * sym_noise;

  inst.op.factors.reserve(s.m);
  for (int i = 0; i < s.m; ++i) {
    inst.op.factors.push_back(draw_gaussian(op_rng, n, 1));
  }
  inst.rhs = inst.op.apply(inst.ground_truth);

  attach_objective(inst);

  const EigenDecomposition top = top_k_eigh(SymmetricMatrix(inst.observed), 1);
  inst.x1 = LowRankFactor{n, Eigen::VectorXd::Constant(1, s.tau), top.vectors};
  Eigen::VectorXd resid = inst.op.apply(inst.x1.to_dense()) - inst.rhs;
  const double rnorm = resid.norm();
  inst.y1 = DualPoint{rnorm > 1e-15 ? Eigen::MatrixXd(resid / rnorm)
                                    : Eigen::MatrixXd::Zero(s.m, 1)};
  return inst;
}

Instance gen_least_squares_l1(const InstanceSpec& raw) {
  InstanceSpec s = resolve_defaults(raw);
  if (s.family != Family::LeastSquaresL1) throw InvalidInput("family mismatch");
  Instance inst;
  inst.meta = s;
  const int n = s.n;
  Rng root(s.seed);
  Rng z_rng = root.stream(0);
  Rng op_rng = root.stream(1);
  Rng rhs_rng = root.stream(2);
  Rng init_rng = root.stream(3);

  const Eigen::MatrixXd z0 = draw_sparse_factor(
      z_rng, n, s.rank_gt, /*gaussian_values=*/true, &inst.resample_count);
  inst.ground_truth = n * z0 * z0.transpose();

  inst.op.factors.reserve(s.m);
  for (int i = 0; i < s.m; ++i) {
    inst.op.factors.push_back(draw_gaussian(op_rng, n, s.op_rank));
  }
  const Eigen::VectorXd b0 = inst.op.apply(inst.ground_truth);
  Eigen::VectorXd dir = draw_gaussian(rhs_rng, s.m, 1).col(0);
  dir.normalize();
  inst.rhs = b0 + 0.5 * b0.norm() * dir;

  attach_objective(inst);

  Eigen::MatrixXd u = draw_gaussian(init_rng, n, s.rank_gt);
  u /= u.norm();
  const Eigen::MatrixXd probe = s.tau * u * u.transpose();
  const Eigen::MatrixXd neg_grad = -inst.op.adjoint(inst.op.apply(probe) - inst.rhs);
  inst.x1 = truncated_project(SymmetricMatrix(neg_grad), s.rank_gt,
                              inst.objective.spec);
  inst.y1 = DualPoint{sign_of(inst.x1.to_dense())};
  return inst;
}

Instance generate(const InstanceSpec& spec) {
  switch (spec.family) {
    case Family::SparsePCA: return gen_sparse_pca(spec);
    case Family::LowRankSparse: return gen_lowrank_sparse(spec);
    case Family::RobustPCA: return gen_robust_pca(spec);
    case Family::LinConstrained: return gen_linconstrained(spec);
    case Family::LeastSquaresL1: return gen_least_squares_l1(spec);
  }
  throw InvalidInput("generate: unknown family");
}

CounterexampleResult counterexample_demo(int n, int k, double eta) {
  if (k < 1 || 4 * k > n) throw InvalidInput("counterexample_demo: need 1 <= k <= n/4");
  if (!(eta > 0.0) || !(eta < 2.0 / 3.0)) {
    throw InvalidInput("counterexample_demo: need 0 < eta < 2/3");
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  z.head(k).setConstant(1.0 / std::sqrt(static_cast<double>(k)));
  Eigen::VectorXd z_perp = Eigen::VectorXd::Zero(n);
  z_perp.tail(n - k).setConstant(1.0 / std::sqrt(static_cast<double>(n - k)));
  const Eigen::VectorXd v = z;

  const Eigen::MatrixXd vvt = v * v.transpose();
  const Eigen::MatrixXd subgrad = -z * z.transpose() - z_perp * z_perp.transpose() +
                                  (1.0 / (2.0 * k)) * sign_of(vvt);
  const SpectrahedronSpec spec{n, 1.0};

  CounterexampleResult out;
  const LowRankFactor stepped =
      project(SymmetricMatrix(vvt - eta * subgrad), spec);
  out.projected_rank = stepped.rank();
  out.projected_weights = stepped.weights;
  out.threshold = simplex_threshold(
      full_eigh(SymmetricMatrix(vvt - eta * subgrad)).values, 1.0);

  // Step along the subgradient that certifies optimality of z z^T instead.
  const Eigen::MatrixXd opt_subgrad = -0.5 * z * z.transpose();
  const LowRankFactor opt_stepped = project(
      SymmetricMatrix(z * z.transpose() - eta * opt_subgrad), spec);
  out.optimal_step_rank = opt_stepped.rank();
  return out;
}

RecoveryMetrics recovery_metrics(const Instance& inst, const Eigen::MatrixXd& best_z,
                                 const DualPoint& best_w, double best_gap) {
  const double scale = inst.ground_truth.trace() / inst.meta.tau;
  const double gt_norm2 = inst.ground_truth.squaredNorm();
  RecoveryMetrics out;
  out.init_error =
      (scale * inst.x1.to_dense() - inst.ground_truth).squaredNorm() / gt_norm2;
  out.recovery_error = (scale * best_z - inst.ground_truth).squaredNorm() / gt_norm2;
  const Eigen::MatrixXd grad = inst.objective.grad_x(best_z, best_w);
  out.eigengap = strict_comp_gap(SymmetricMatrix(grad), inst.meta.rank_gt);
  out.dual_gap_at_best = best_gap;
  const EigenDecomposition eig = full_eigh(SymmetricMatrix(best_z));
  out.solution_rank =
      static_cast<int>((eig.values.array() > 1e-6 * eig.values.maxCoeff()).count());
  return out;
}

}  // namespace lrmp
