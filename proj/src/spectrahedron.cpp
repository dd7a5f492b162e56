#include "lrmp/spectrahedron.hpp"

namespace lrmp {

namespace {

LowRankFactor keep_positive(const Eigen::VectorXd& clipped,
                            const Eigen::MatrixXd& vectors, int n) {
  int r = 0;
  while (r < clipped.size() && clipped[r] > 0.0) ++r;
  LowRankFactor out;
  out.n = n;
  out.weights = clipped.head(r);
  out.vectors = vectors.leftCols(r);
  return out;
}

}  // namespace

LowRankFactor project(const SymmetricMatrix& a, const SpectrahedronSpec& spec) {
  const EigenDecomposition eig = full_eigh(a);
  const Eigen::VectorXd clipped = project_simplex(eig.values, spec.tau);
  return keep_positive(clipped, eig.vectors, a.n());
}

LowRankFactor truncated_project_from_pairs(const Eigen::VectorXd& values,
                                           const Eigen::MatrixXd& vectors, int n,
                                           const SpectrahedronSpec& spec) {
  const Eigen::VectorXd clipped = project_simplex(values, spec.tau);
  return keep_positive(clipped, vectors, n);
}

LowRankFactor truncated_project(const SymmetricMatrix& a, int r,
                                const SpectrahedronSpec& spec) {
  if (r < 1 || r > a.n()) throw InvalidInput("truncated_project: 1 <= r <= n");
  const EigenDecomposition eig = top_k_eigh(a, r);
  return truncated_project_from_pairs(eig.values, eig.vectors, a.n(), spec);
}

bool certificate_from_values(const Eigen::VectorXd& top_values, int r,
                             const SpectrahedronSpec& spec, double slack) {
  if (top_values.size() < r + 1) {
    throw InvalidInput("certificate_from_values: need r+1 leading eigenvalues");
  }
  return top_values.head(r).sum() >= spec.tau + r * top_values[r] + slack;
}

bool projection_certificate(const SymmetricMatrix& a, int r,
                            const SpectrahedronSpec& spec, double slack) {
  if (r < 1 || r >= a.n()) {
    throw InvalidInput("projection_certificate: require 1 <= r <= n-1");
  }
  const EigenDecomposition eig = top_k_eigh(a, r + 1);
  return certificate_from_values(eig.values, r, spec, slack);
}

}  // namespace lrmp
