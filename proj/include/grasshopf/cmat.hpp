#pragma once

#include <Eigen/Dense>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "tolerances.hpp"

namespace ghf {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ShapeError : Error {
  using Error::Error;
};
struct InvariantError : Error {
  using Error::Error;
};
struct NumericalError : Error {
  using Error::Error;
};
struct RankError : Error {
  using Error::Error;
};

inline std::string to_text(const CMat& A) {
  std::ostringstream os;
  os << A;
  return os.str();
}

inline void require_finite(const CMat& A, const char* who) {
  if (!A.allFinite()) throw InvariantError(std::string(who) + ": non-finite entries");
}

inline void require_same_shape(const CMat& A, const CMat& B, const char* who) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw ShapeError(std::string(who) + ": shape mismatch " + std::to_string(A.rows()) + "x" +
                     std::to_string(A.cols()) + " vs " + std::to_string(B.rows()) + "x" +
                     std::to_string(B.cols()));
}

inline void require_square(const CMat& A, const char* who) {
  if (A.rows() != A.cols()) throw ShapeError(std::string(who) + ": square matrix required");
}

/// trace(A* B); conjugate-symmetric pairing, positive definite on nonzero input.
inline cxd frobenius_inner(const CMat& A, const CMat& B) {
  require_same_shape(A, B, "frobenius_inner");
  return (A.adjoint() * B).trace();
}

/// Square matrix with A* = -A, checked at construction.
class SkewHermitian {
 public:
  explicit SkewHermitian(CMat A, double rel_tol = tol("skew_hermitian")) : A_(std::move(A)) {
    require_square(A_, "SkewHermitian");
    require_finite(A_, "SkewHermitian");
    const double resid = (A_ + A_.adjoint()).norm();
    if (resid > rel_tol * (1.0 + A_.norm()))
      throw InvariantError("SkewHermitian: ||A + A*|| = " + std::to_string(resid));
  }

  Eigen::Index dim() const { return A_.rows(); }
  const CMat& mat() const { return A_; }

 private:
  CMat A_;
};

/// Square matrix with U*U = I, checked at construction.
class Unitary {
 public:
  explicit Unitary(CMat U, double tol_ = tol("unitary")) : U_(std::move(U)) {
    require_square(U_, "Unitary");
    require_finite(U_, "Unitary");
    const Eigen::Index k = U_.rows();
    const double resid = (U_.adjoint() * U_ - CMat::Identity(k, k)).norm();
    if (resid > tol_) throw InvariantError("Unitary: ||U*U - I|| = " + std::to_string(resid));
  }

  Eigen::Index dim() const { return U_.rows(); }
  const CMat& mat() const { return U_; }

 private:
  CMat U_;
};

/// exp(A) for skew-Hermitian A, via eigendecomposition of the Hermitian matrix -iA.
/// Eigenvalues of A are purely imaginary, so the result is unitary up to round-off.
inline Unitary expm_skew(const SkewHermitian& A) {
  const CMat H = cxd(0, -1) * A.mat();
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  if (es.info() != Eigen::Success) throw NumericalError("expm_skew: eigendecomposition failed");
  const Eigen::Index k = A.dim();
  CVec phases(k);
  for (Eigen::Index j = 0; j < k; ++j) phases[j] = std::polar(1.0, es.eigenvalues()[j]);
  return Unitary(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
}

inline Unitary expm_skew(const CMat& A) { return expm_skew(SkewHermitian(A)); }

/// Closest orthonormal-column matrix to M in Frobenius norm: M (M*M)^{-1/2}.
/// Unlike QR this does not rotate within the column span more than necessary.
inline CMat polar_retract(const CMat& M, double rank_tol = tol("rank")) {
  if (M.rows() < M.cols()) throw ShapeError("polar_retract: tall matrix required");
  require_finite(M, "polar_retract");
  const CMat G = M.adjoint() * M;
  Eigen::SelfAdjointEigenSolver<CMat> es(G);
  if (es.info() != Eigen::Success)
    throw NumericalError("polar_retract: eigendecomposition failed");
  if (es.eigenvalues().minCoeff() <= rank_tol * rank_tol)
    throw RankError("polar_retract: rank deficient, smallest singular value below " +
                    std::to_string(rank_tol));
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().array().rsqrt();
  return M * (es.eigenvectors() * inv_sqrt.cast<cxd>().asDiagonal() * es.eigenvectors().adjoint());
}

}  // namespace ghf
