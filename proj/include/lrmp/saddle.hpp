#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lrmp/meg.hpp"
#include "lrmp/rng.hpp"
#include "lrmp/spectrahedron.hpp"

namespace lrmp {

// The four Lipschitz constants of the gradient field plus the gradient bound
// G = sup ||grad_X f||; all measured in the norm pairing of the solver family
// (Frobenius for Euclidean methods, spectral for MEG).
struct SmoothnessConstants {
  double beta_x = 0.0;
  double beta_y = 0.0;
  double beta_xy = 0.0;
  double beta_yx = 0.0;
  double grad_bound = 0.0;
};

enum class DualDomainKind { InfinityBallMatrix, L2Ball, Simplex };

struct DualDomain {
  DualDomainKind kind = DualDomainKind::L2Ball;
  int dim = 1;  // matrix ball: payload dim x dim; vector domains: dim x 1
};

struct DualPoint {
  Eigen::MatrixXd payload;
};

inline double dual_dot(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a.array() * b.array()).sum();
}

/// Exact Euclidean projection onto the dual domain: entrywise clamp
/// (infinity ball), radial rescale (l2 ball), or sorted-threshold (simplex).
DualPoint dual_project(const Eigen::MatrixXd& raw, const DualDomain& domain);

bool dual_contains(const DualPoint& point, const DualDomain& domain,
                   double tol = 1e-10);

// Oracle bundle for min_{X in tau S_n} max_{y in K} f(X, y). Oracles receive
// the densified primal iterate; a problem may install grad_x_factored to
// consume the factored form instead.
struct SaddleObjective {
  SpectrahedronSpec spec;
  DualDomain domain;
  SmoothnessConstants euclidean;  // Frobenius pairing (extragradient)
  SmoothnessConstants spectral;   // spectral/nuclear pairing (MEG)

  std::function<Eigen::MatrixXd(const Eigen::MatrixXd&, const DualPoint&)> grad_x;
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd&, const DualPoint&)> grad_y;
  std::function<double(const Eigen::MatrixXd&, const DualPoint&)> value;
  std::function<double(const Eigen::MatrixXd&)> objective;  // g(X) = max_y f(X,y)
  std::function<Eigen::MatrixXd(const LowRankFactor&, const DualPoint&)> grad_x_factored;
};

struct SaddleCandidate {
  Eigen::MatrixXd z;
  DualPoint w;
};

/// Worst-case step size for the extragradient method: the exact four-way min
/// over 1/(2 sqrt(bX^2+byX^2)), 1/(2 sqrt(by^2+bXy^2)), 1/(bX+bXy), 1/(by+byX).
double step_size_extragradient(const SmoothnessConstants& c);

/// Worst-case step size for MEG mirror-prox; same shape with a 2 sqrt(2) factor
/// on the primal curvature term.
double step_size_meg(const SmoothnessConstants& c);

struct EpsScheduleParams {
  bool plain_cubic = false;  // eps_t = min(1, 1/(t+c+1)^3), hand-tuned c
  double eps_tilde0 = 0.0;
  double grad_bound = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  double beta_max = 0.0;  // max(beta_x, beta_xy)
  double c = 0.0;
};

/// Approximation-mass schedule eps_t, clipped to [0, 1].
double eps_schedule(int t, const EpsScheduleParams& params);

/// Non-fatal diagnostic: the schedule analysis wants c >= 12/(eta delta).
std::optional<std::string> eps_schedule_warning(const EpsScheduleParams& params);

/// Optimality certificate at a candidate pair: the linearized gap
/// max_X <Z-X, grad_X> - min_y <w-y, grad_y>, both extrema in closed form.
double dual_gap(const SaddleObjective& obj, const SaddleCandidate& cand);

/// lambda_{n-r} - lambda_n of a gradient matrix (1-based, descending): the
/// strict-complementarity eigengap when evaluated at a rank-r solution.
double strict_comp_gap(const SymmetricMatrix& grad_at_candidate, int r);

// Warm-start condition of the MEG convergence analysis: entropy mismatch plus a scaled
// Frobenius gap plus the tail mass, compared against R^2. Diagnostic only.
bool warm_start_check(const LowRankFactor& x_star, const LowRankFactor& x0,
                      double eps, double radius);
double warm_start_lhs(const LowRankFactor& x_star, const LowRankFactor& x0,
                      double eps);

/// Initialization radius R0(r) of the extragradient convergence analysis; delta_r and
/// delta_r_shifted are the eigengaps delta(r) and delta(r - r_tilde + 1) of
/// the gradient at the optimum, r_tilde the bottom-eigenvalue multiplicity.
double extragradient_warm_start_radius(const SmoothnessConstants& c, double eta,
                                       int r_tilde, double delta_r,
                                       double delta_r_shifted);

/// Initialization radius R0 of the MEG convergence analysis.
double meg_warm_start_radius(const SmoothnessConstants& c, double grad_bound,
                             double delta, int r_star, double lambda_r_star);

/// Max relative error between oracle gradients and central finite differences
/// of `value` over `n_dirs` random directions.
double gradient_check(const SaddleObjective& obj, const Eigen::MatrixXd& x,
                      const DualPoint& y, int n_dirs, Rng& rng,
                      double step = 1e-6);

}  // namespace lrmp
