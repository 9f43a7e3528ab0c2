#pragma once

#include <random>
#include <utility>

#include "cmat.hpp"

namespace ghf {

using Rng = std::mt19937_64;

/// rows x cols matrix with independent standard normal real/imaginary parts.
/// Fill order is fixed (row-major) so draws are reproducible across platforms.
inline CMat random_cmat(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  CMat A(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) A(r, c) = cxd(g(rng), g(rng));
  return A;
}

inline CMat random_skew(Rng& rng, Eigen::Index k) {
  const CMat A = random_cmat(rng, k, k);
  return 0.5 * (A - A.adjoint());
}

/// m x n with orthonormal columns scaled by sqrt(lambda), so X*X = lambda I.
inline CMat random_star_X(Rng& rng, Eigen::Index n, Eigen::Index m, double lambda = 1.0) {
  if (m < n) throw ShapeError("random_star_X: m >= n required");
  const CMat A = random_cmat(rng, m, n);
  Eigen::HouseholderQR<CMat> qr(A);
  const CMat Q = qr.householderQ() * CMat::Identity(m, n);
  return std::sqrt(lambda) * Q;
}

inline CMat random_unitary(Rng& rng, Eigen::Index k) { return random_star_X(rng, k, k, 1.0); }

/// Real pair (X, Y) with jointly orthonormal columns: X*X = Y*Y = I, X*Y = 0.
inline std::pair<CMat, CMat> random_flat_pair(Rng& rng, Eigen::Index n, Eigen::Index m) {
  if (m < 2 * n) throw ShapeError("random_flat_pair: m >= 2n required");
  std::normal_distribution<double> g;
  Eigen::MatrixXd A(m, 2 * n);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < 2 * n; ++c) A(r, c) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(m, 2 * n);
  return {Q.leftCols(n).cast<cxd>(), Q.rightCols(n).cast<cxd>()};
}

}  // namespace ghf
