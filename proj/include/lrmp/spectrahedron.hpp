#pragma once

#include "lrmp/linalg.hpp"

namespace lrmp {

// The feasible set {X symmetric : X >= 0, Tr(X) = tau}; tau = 1 is the
// standard spectrahedron.
struct SpectrahedronSpec {
  int n = 0;
  double tau = 1.0;
};

/// Exact Euclidean projection: eigenvalues clipped at the simplex threshold,
/// eigenvectors unchanged. Only strictly positive weights are kept.
LowRankFactor project(const SymmetricMatrix& a, const SpectrahedronSpec& spec);

/// Rank-r truncated projection: the top-r eigenpairs of a, with the top-r
/// eigenvalues projected onto the tau-simplex. Requests exactly r pairs of a.
LowRankFactor truncated_project(const SymmetricMatrix& a, int r,
                                const SpectrahedronSpec& spec);

/// True iff sum_{i<=r} lambda_i(a) >= tau + r * lambda_{r+1}(a) (+ slack),
/// in which case the rank-r truncated projection equals the exact one.
/// Requests r+1 eigenpairs of a.
bool projection_certificate(const SymmetricMatrix& a, int r,
                            const SpectrahedronSpec& spec, double slack = 0.0);

// Same computations on an already-available top spectrum, so a solver can
// share one rank-(r+1) eigensolve between the certificate and the update.
bool certificate_from_values(const Eigen::VectorXd& top_values, int r,
                             const SpectrahedronSpec& spec, double slack = 0.0);
LowRankFactor truncated_project_from_pairs(const Eigen::VectorXd& values,
                                           const Eigen::MatrixXd& vectors, int n,
                                           const SpectrahedronSpec& spec);

}  // namespace lrmp
