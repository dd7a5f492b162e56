#include "lrmp/saddle.hpp"

#include <cmath>
#include <limits>

namespace lrmp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inv_or_inf(double x) { return x > 0.0 ? 1.0 / x : kInf; }

void check_payload_shape(const Eigen::MatrixXd& payload, const DualDomain& d) {
  const bool is_matrix = d.kind == DualDomainKind::InfinityBallMatrix;
  const Eigen::Index rows = payload.rows();
  const Eigen::Index cols = payload.cols();
  if (is_matrix ? (rows != d.dim || cols != d.dim) : (rows != d.dim || cols != 1)) {
    throw InvalidInput("dual payload dimension does not match the domain");
  }
}

}  // namespace

DualPoint dual_project(const Eigen::MatrixXd& raw, const DualDomain& domain) {
  check_payload_shape(raw, domain);
  switch (domain.kind) {
    case DualDomainKind::InfinityBallMatrix:
      return DualPoint{raw.array().min(1.0).max(-1.0)};
    case DualDomainKind::L2Ball: {
      const double norm = raw.norm();
      if (norm > 1.0) return DualPoint{raw / norm};
      return DualPoint{raw};
    }
    case DualDomainKind::Simplex: {
      Eigen::VectorXd v = raw.col(0);
      return DualPoint{project_simplex(v, 1.0)};
    }
  }
  throw InvalidInput("dual_project: unknown domain kind");
}

bool dual_contains(const DualPoint& point, const DualDomain& domain, double tol) {
  check_payload_shape(point.payload, domain);
  switch (domain.kind) {
    case DualDomainKind::InfinityBallMatrix:
      return point.payload.array().abs().maxCoeff() <= 1.0 + tol;
    case DualDomainKind::L2Ball:
      return point.payload.norm() <= 1.0 + tol;
    case DualDomainKind::Simplex:
      return point.payload.minCoeff() >= -tol &&
             std::abs(point.payload.sum() - 1.0) <= tol;
  }
  return false;
}

double step_size_extragradient(const SmoothnessConstants& c) {
  const double eta = std::min(
      std::min(inv_or_inf(2.0 * std::hypot(c.beta_x, c.beta_yx)),
               inv_or_inf(2.0 * std::hypot(c.beta_y, c.beta_xy))),
      std::min(inv_or_inf(c.beta_x + c.beta_xy), inv_or_inf(c.beta_y + c.beta_yx)));
  if (!std::isfinite(eta)) {
    throw InvalidInput("step_size_extragradient: all smoothness constants are zero");
  }
  return eta;
}

double step_size_meg(const SmoothnessConstants& c) {
  const double eta = std::min(
      std::min(inv_or_inf(c.beta_x + c.beta_xy), inv_or_inf(c.beta_y + c.beta_yx)),
      std::min(inv_or_inf(2.0 * std::sqrt(2.0) * std::hypot(c.beta_x, c.beta_yx)),
               inv_or_inf(2.0 * std::hypot(c.beta_y, c.beta_xy))));
  if (!std::isfinite(eta)) {
    throw InvalidInput("step_size_meg: all smoothness constants are zero");
  }
  return eta;
}

double eps_schedule(int t, const EpsScheduleParams& p) {
  if (t < 0 || p.c < 0.0) throw InvalidInput("eps_schedule: negative inputs");
  const double cubic = 1.0 / std::pow(t + 1.0 + p.c, 3.0);
  if (p.plain_cubic) return std::min(1.0, cubic);

  if (p.eps_tilde0 < 0.0 || p.grad_bound < 0.0 || p.eta < 0.0 || p.delta < 0.0 ||
      p.beta_max < 0.0) {
    throw InvalidInput("eps_schedule: negative inputs");
  }
  const double g_eta = p.grad_bound * p.eta;
  const double lead_a =
      p.eps_tilde0 * p.eps_tilde0 / (16.0 * std::max(g_eta * g_eta, 1.0));
  const double denom =
      16.0 * std::sqrt(2.0) * p.beta_max * (std::sqrt(5.0) + std::sqrt(g_eta));
  const double lead_b = denom > 0.0 ? std::pow(p.delta / denom, 4.0) : kInf;
  return std::min(1.0, std::min(lead_a, lead_b) * cubic);
}

std::optional<std::string> eps_schedule_warning(const EpsScheduleParams& p) {
  if (p.plain_cubic) return std::nullopt;
  if (p.eta > 0.0 && p.delta > 0.0 && p.c < 12.0 / (p.eta * p.delta)) {
    return "eps schedule: c = " + std::to_string(p.c) +
           " is below the analysis threshold 12/(eta*delta) = " +
           std::to_string(12.0 / (p.eta * p.delta));
  }
  return std::nullopt;
}

double dual_gap(const SaddleObjective& obj, const SaddleCandidate& cand) {
  const double tau = obj.spec.tau;
  if (std::abs(cand.z.trace() - tau) > 1e-8 * std::max(1.0, tau)) {
    throw InvalidInput("dual_gap: primal candidate violates the trace constraint");
  }
  if (!dual_contains(cand.w, obj.domain, 1e-8)) {
    throw InvalidInput("dual_gap: dual candidate outside the domain");
  }

  const Eigen::MatrixXd gx = obj.grad_x(cand.z, cand.w);
  const Eigen::MatrixXd gy = obj.grad_y(cand.z, cand.w);

  // max over the spectrahedron of <Z - X, gx>: maximizer is tau v v^T at the
  // bottom eigenvector of gx.
  const EigenDecomposition bottom = top_k_eigh(SymmetricMatrix(-gx), 1);
  const double lambda_min = -bottom.values[0];
  const double primal_term = dual_dot(cand.z, gx) - tau * lambda_min;

  // min over K of <w - y, gy>: the maximizer of <y, gy> is the sign pattern,
  // the radial point, or the argmax vertex depending on the domain.
  double max_linear = 0.0;
  switch (obj.domain.kind) {
    case DualDomainKind::InfinityBallMatrix:
      max_linear = gy.array().abs().sum();
      break;
    case DualDomainKind::L2Ball:
      max_linear = gy.norm();
      break;
    case DualDomainKind::Simplex:
      max_linear = gy.maxCoeff();
      break;
  }
  const double dual_term = dual_dot(cand.w.payload, gy) - max_linear;
  return primal_term - dual_term;
}

double strict_comp_gap(const SymmetricMatrix& grad_at_candidate, int r) {
  const int n = grad_at_candidate.n();
  if (r < 1 || r >= n) throw InvalidInput("strict_comp_gap: require 1 <= r <= n-1");
  const EigenDecomposition eig = full_eigh(grad_at_candidate);
  return eig.values[n - r - 1] - eig.values[n - 1];
}

double warm_start_lhs(const LowRankFactor& x_star, const LowRankFactor& x0,
                      double eps) {
  if (x_star.rank() != x0.rank()) {
    throw InvalidInput("warm_start_check: factor ranks must match");
  }
  if (!(eps > 0.0) || eps > 0.75) {
    throw InvalidInput("warm_start_check: eps must lie in (0, 3/4]");
  }
  const int n = x_star.n;
  double entropy = 0.0;
  for (int i = 0; i < x_star.weights.size(); ++i) {
    if (x_star.weights[i] > 0.0) {
      entropy += x_star.weights[i] * std::log(x_star.weights[i]);
    }
  }
  // <X*, V log(W) V^T> through the factors: sum_j log(w_j) v_j^T X* v_j.
  double cross = 0.0;
  for (int j = 0; j < x0.weights.size(); ++j) {
    const Eigen::VectorXd proj = x_star.vectors.transpose() * x0.vectors.col(j);
    const double quad = proj.dot(x_star.weights.asDiagonal() * proj);
    cross += std::log(x0.weights[j]) * quad;
  }
  const double frob2 = (x_star.to_dense() - x0.to_dense()).squaredNorm();
  const double lambda_1 = x_star.weights[0];
  const double lambda_r = x_star.weights[x_star.weights.size() - 1];
  return entropy - cross +
         (2.0 * lambda_1 / (lambda_r * lambda_r)) * std::log(n / eps) * frob2 +
         4.0 * eps;
}

bool warm_start_check(const LowRankFactor& x_star, const LowRankFactor& x0,
                      double eps, double radius) {
  return warm_start_lhs(x_star, x0, eps) <= radius * radius;
}

double extragradient_warm_start_radius(const SmoothnessConstants& c, double eta,
                                       int r_tilde, double delta_r,
                                       double delta_r_shifted) {
  if (r_tilde < 1 || eta <= 0.0) {
    throw InvalidInput("extragradient_warm_start_radius: bad parameters");
  }
  const double beta_max = std::max(c.beta_x, c.beta_xy);
  const double sqrt2 = std::sqrt(2.0);
  const double prefix =
      eta / ((1.0 + sqrt2) * (1.0 + (2.0 + sqrt2) * eta * beta_max));
  const double rt = static_cast<double>(r_tilde);
  return prefix * std::max(std::sqrt(rt) * delta_r_shifted / 2.0,
                           delta_r / (1.0 + 1.0 / std::sqrt(rt)));
}

double meg_warm_start_radius(const SmoothnessConstants& c, double grad_bound,
                             double delta, int r_star, double lambda_r_star) {
  if (r_star < 1 || lambda_r_star <= 0.0) {
    throw InvalidInput("meg_warm_start_radius: bad parameters");
  }
  const double beta_max = std::max(c.beta_x, c.beta_xy);
  const double denom = 7.0 * beta_max +
                       (1.0 + 2.0 * std::sqrt(2.0 * r_star) / lambda_r_star) *
                           grad_bound;
  return 0.25 * delta / denom;
}

double gradient_check(const SaddleObjective& obj, const Eigen::MatrixXd& x,
                      const DualPoint& y, int n_dirs, Rng& rng, double step) {
  const int n = static_cast<int>(x.rows());
  const Eigen::MatrixXd gx = obj.grad_x(x, y);
  const Eigen::MatrixXd gy = obj.grad_y(x, y);
  double worst = 0.0;
  for (int d = 0; d < n_dirs; ++d) {
    Eigen::MatrixXd dir(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dir(i, j) = rng.normal();
    dir = 0.5 * (dir + dir.transpose());
    dir /= dir.norm();
    const double fd = (obj.value(x + step * dir, y) - obj.value(x - step * dir, y)) /
                      (2.0 * step);
    const double ip = dual_dot(gx, dir);
    worst = std::max(worst, std::abs(fd - ip) / std::max(1.0, std::abs(ip)));

    Eigen::MatrixXd ydir(y.payload.rows(), y.payload.cols());
    for (int i = 0; i < ydir.rows(); ++i)
      for (int j = 0; j < ydir.cols(); ++j) ydir(i, j) = rng.normal();
    ydir /= ydir.norm();
    DualPoint yp{y.payload + step * ydir};
    DualPoint ym{y.payload - step * ydir};
    const double fdy = (obj.value(x, yp) - obj.value(x, ym)) / (2.0 * step);
    const double ipy = dual_dot(gy, ydir);
    worst = std::max(worst, std::abs(fdy - ipy) / std::max(1.0, std::abs(ipy)));
  }
  return worst;
}

}  // namespace lrmp
