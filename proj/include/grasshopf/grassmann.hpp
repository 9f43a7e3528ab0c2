#pragma once

#include <cmath>

#include "lie.hpp"

namespace ghf {

/// (n+m) x n matrix with orthonormal columns; a point of the frame bundle.
class StiefelFrame {
 public:
  explicit StiefelFrame(CMat F, double tol_ = tol("frame")) : F_(std::move(F)) {
    if (F_.rows() < F_.cols()) throw ShapeError("StiefelFrame: tall matrix required");
    require_finite(F_, "StiefelFrame");
    const Eigen::Index n = F_.cols();
    const double resid = (F_.adjoint() * F_ - CMat::Identity(n, n)).norm();
    if (resid > tol_) throw InvariantError("StiefelFrame: ||F*F - I|| = " + std::to_string(resid));
  }

  Eigen::Index n() const { return F_.cols(); }
  Eigen::Index m() const { return F_.rows() - F_.cols(); }
  const CMat& mat() const { return F_; }

 private:
  CMat F_;
};

/// Rank-n Hermitian projector; a point of the Grassmannian.
class GrassmannPoint {
 public:
  explicit GrassmannPoint(CMat P, double tol_ = tol("projector")) : P_(std::move(P)) {
    require_square(P_, "GrassmannPoint");
    require_finite(P_, "GrassmannPoint");
    if ((P_ - P_.adjoint()).norm() > tol_)
      throw InvariantError("GrassmannPoint: not Hermitian");
    if ((P_ * P_ - P_).norm() > tol_)
      throw InvariantError("GrassmannPoint: not idempotent");
    const cxd tr = P_.trace();
    n_ = static_cast<Eigen::Index>(std::llround(tr.real()));
    if (n_ < 1 || n_ >= P_.rows() || std::abs(tr - cxd(double(n_), 0)) > tol_)
      throw InvariantError("GrassmannPoint: trace is not an admissible integer rank");
  }

  Eigen::Index n() const { return n_; }
  Eigen::Index m() const { return P_.rows() - n_; }
  const CMat& mat() const { return P_; }

 private:
  CMat P_;
  Eigen::Index n_;
};

/// The bundle projection F -> F F*; invariant under F -> F g for unitary g.
inline GrassmannPoint frame_project(const StiefelFrame& F) {
  return GrassmannPoint(F.mat() * F.mat().adjoint());
}

/// The first-n-columns coordinate frame [I; 0].
inline CMat canonical_frame(Eigen::Index n, Eigen::Index m) {
  CMat F = CMat::Zero(n + m, n);
  F.topLeftCorner(n, n) = CMat::Identity(n, n);
  return F;
}

/// Geodesic through frame_project(F0) with initial direction hat(X).
inline GrassmannPoint base_geodesic(const CMat& X, double t, const StiefelFrame& F0) {
  return frame_project(StiefelFrame(expm_skew(CMat(t * hat(X))).mat() * F0.mat()));
}

/// Unit quaternion w1 + w2 i + w3 j + w4 k.
struct SU2Element {
  double w1, w2, w3, w4;

  SU2Element(double a, double b, double c, double d) : w1(a), w2(b), w3(c), w4(d) {
    const double n2 = a * a + b * b + c * c + d * d;
    if (std::abs(n2 - 1.0) > 1e-12) throw InvariantError("SU2Element: not unit norm");
  }

  static SU2Element normalized(double a, double b, double c, double d) {
    const double r = std::sqrt(a * a + b * b + c * c + d * d);
    return {a / r, b / r, c / r, d / r};
  }
};

/// Left-multiplication image of w in GL(4, R).
inline Eigen::Matrix4d su2_real4(const SU2Element& w) {
  Eigen::Matrix4d M;
  M << w.w1, w.w2, -w.w3, -w.w4,  //
      -w.w2, w.w1, w.w4, -w.w3,   //
      w.w3, -w.w4, w.w1, -w.w2,   //
      w.w4, w.w3, w.w2, w.w1;
  return M;
}

/// The i-conjugate: same image with the i-component negated.
inline Eigen::Matrix4d su2_itilde(const SU2Element& w) {
  return su2_real4({w.w1, -w.w2, w.w3, w.w4});
}

/// Quaternion product uv.
inline SU2Element su2_mul(const SU2Element& u, const SU2Element& v) {
  return SU2Element::normalized(u.w1 * v.w1 - u.w2 * v.w2 - u.w3 * v.w3 - u.w4 * v.w4,
                                u.w1 * v.w2 + u.w2 * v.w1 + u.w3 * v.w4 - u.w4 * v.w3,
                                u.w1 * v.w3 - u.w2 * v.w4 + u.w3 * v.w1 + u.w4 * v.w2,
                                u.w1 * v.w4 + u.w2 * v.w3 - u.w3 * v.w2 + u.w4 * v.w1);
}

/// p(w) = w wtilde, read off in sphere coordinates; lands on x^2+y^2+z^2 = 1.
/// The coordinate slots are fixed by the identity su2_project(su2_T(x, y)) =
/// (cos 2x, sin 2x cos y, sin 2x sin y), not by any transcription of the
/// product matrix.
inline Eigen::Vector3d su2_project(const SU2Element& w) {
  const Eigen::Matrix4d P = su2_real4(w) * su2_itilde(w);
  return {P(0, 0), P(2, 0), P(3, 0)};
}

/// Geodesic patch (cos x, 0, sin x cos y, sin x sin y); its projection doubles x.
inline SU2Element su2_T(double x, double y) {
  return {std::cos(x), 0.0, std::sin(x) * std::cos(y), std::sin(x) * std::sin(y)};
}

/// Circle subgroup (cos z, sin z, 0, 0), the fiber through the identity.
inline SU2Element su2_circle(double z) { return {std::cos(z), std::sin(z), 0.0, 0.0}; }

}  // namespace ghf
