#pragma once

#include <cmath>
#include <optional>

#include "cmat.hpp"

namespace ghf {

struct NotInM : Error {
  using Error::Error;
};
struct StarViolation : Error {
  using Error::Error;
};

/// h(v, w) = v* w; conjugate linear in the first slot.
inline cxd hermitian_h(const CVec& v, const CVec& w) {
  if (v.size() != w.size()) throw ShapeError("hermitian_h: length mismatch");
  return v.dot(w);  // Eigen conjugates the first argument
}

/// X (m x n) -> [[0, -X*], [X, 0]], skew-Hermitian of dimension n+m.
inline CMat hat(const CMat& X) {
  const Eigen::Index m = X.rows(), n = X.cols();
  CMat A = CMat::Zero(n + m, n + m);
  A.topRightCorner(n, m) = -X.adjoint();
  A.bottomLeftCorner(m, n) = X;
  return A;
}

/// Inverse of hat on the off-diagonal part. Rejects input whose diagonal
/// blocks carry more than rel_tol relative mass (the bracket left the
/// off-diagonal subspace, which falsifies the caller's assumption).
inline CMat unhat(const CMat& A, Eigen::Index n, double rel_tol = tol("m_part")) {
  require_square(A, "unhat");
  const Eigen::Index m = A.rows() - n;
  if (n <= 0 || m <= 0) throw ShapeError("unhat: bad block split");
  const double diag_mass =
      std::hypot(A.topLeftCorner(n, n).norm(), A.bottomRightCorner(m, m).norm());
  if (diag_mass > rel_tol * (1.0 + A.norm()))
    throw NotInM("unhat: diagonal blocks have norm " + std::to_string(diag_mass));
  return A.bottomLeftCorner(m, n);
}

/// Block-diagonal part of the canonical splitting: A in u(n), B in u(m).
struct HPart {
  CMat A;
  CMat B;
};

struct HMDecomposition {
  HPart h;
  CMat X;  // m x n, the off-diagonal content
};

inline CMat hpart_assemble(const HPart& h) {
  const Eigen::Index n = h.A.rows(), m = h.B.rows();
  CMat D = CMat::Zero(n + m, n + m);
  D.topLeftCorner(n, n) = h.A;
  D.bottomRightCorner(m, m) = h.B;
  return D;
}

/// Split a skew-Hermitian (n+m) matrix into its block-diagonal and hat parts;
/// hpart_assemble(h) + hat(X) reproduces the input exactly.
inline HMDecomposition hm_decompose(const CMat& A, Eigen::Index n) {
  require_square(A, "hm_decompose");
  const Eigen::Index m = A.rows() - n;
  if (n <= 0 || m <= 0) throw ShapeError("hm_decompose: bad block split");
  return {{A.topLeftCorner(n, n), A.bottomRightCorner(m, m)}, A.bottomLeftCorner(m, n)};
}

inline CMat bracket(const CMat& A, const CMat& B) {
  require_square(A, "bracket");
  require_same_shape(A, B, "bracket");
  return A * B - B * A;
}

/// -(1/2) Re trace(A B); the bi-invariant scale that makes the 2x2 generators
/// [[0,-1],[1,0]], [[0,i],[i,0]], [[-i,0],[0,i]] an orthonormal triple.
inline double metric_inner(const CMat& A, const CMat& B) {
  require_square(A, "metric_inner");
  require_same_shape(A, B, "metric_inner");
  return -0.5 * (A * B).trace().real();
}

/// Coefficient form of the double bracket [[hat X, hat Y], hat X], assembled
/// column by column: Z_k = sum_j X_j (-2 h(Y_j, X_k) + h(X_j, Y_k)) + sum_j Y_j h(X_j, X_k).
inline CMat lemma_coeffs(const CMat& X, const CMat& Y) {
  require_same_shape(X, Y, "lemma_coeffs");
  const Eigen::Index n = X.cols();
  CMat Z = CMat::Zero(X.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const cxd cx = -2.0 * hermitian_h(Y.col(j), X.col(k)) + hermitian_h(X.col(j), Y.col(k));
      const cxd cy = hermitian_h(X.col(j), X.col(k));
      Z.col(k) += X.col(j) * cx + Y.col(j) * cy;
    }
  }
  return Z;
}

/// The same double bracket by raw matrix multiplication, pulled back through unhat.
inline CMat double_bracket_oracle(const CMat& X, const CMat& Y) {
  require_same_shape(X, Y, "double_bracket_oracle");
  const CMat Xh = hat(X), Yh = hat(Y);
  return unhat(bracket(bracket(Xh, Yh), Xh), X.cols());
}

/// If G equals c I within rel_tol (relative), returns c.
inline std::optional<cxd> scalar_part(const CMat& G, double rel_tol = tol("star")) {
  require_square(G, "scalar_part");
  const Eigen::Index n = G.rows();
  const cxd c = G.trace() / double(n);
  const double resid = (G - c * CMat::Identity(n, n)).norm();
  if (resid > rel_tol * (1.0 + G.norm())) return std::nullopt;
  return c;
}

/// Embedded su(2) attached to a direction with X*X = lambda I, lambda > 0.
struct Su2Triple {
  CMat A;         // hat of the normalized direction
  CMat B;         // hat of i times the normalized direction
  CMat C;         // circle generator, (1/2)[A, B]
  double lambda;  // scale extracted from X*X
};

/// Normalizes X and builds (A, B, C) with [A,B] = 2C, [C,A] = 2B, [C,B] = -2A.
/// Normalization is what makes all three brackets hold at every scale; C comes
/// out as blockdiag(-i I_n, i X_u X_u*), which is skew-Hermitian as required.
inline Su2Triple su2_embed(const CMat& X, double rel_tol = tol("star")) {
  const auto lam = scalar_part(X.adjoint() * X, rel_tol);
  if (!lam || std::abs(lam->imag()) > rel_tol * (1.0 + std::abs(lam->real())) ||
      lam->real() <= rel_tol)
    throw StarViolation("su2_embed: X*X is not a nonzero real scalar matrix; Gram =\n" +
                        to_text(X.adjoint() * X));
  const double lambda = lam->real();
  Su2Triple t;
  const CMat Xu = X / std::sqrt(lambda);
  t.A = hat(Xu);
  t.B = hat(CMat(cxd(0, 1) * Xu));
  t.C = 0.5 * bracket(t.A, t.B);
  t.lambda = lambda;
  return t;
}

}  // namespace ghf
