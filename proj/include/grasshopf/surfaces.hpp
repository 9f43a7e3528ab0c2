#pragma once

#include <optional>
#include <vector>

#include "grassmann.hpp"

namespace ghf {

struct DomainError : Error {
  using Error::Error;
};

enum class SurfaceClass { Flat, Complex, NotTotallyGeodesic };

inline const char* to_string(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::Flat: return "Flat";
    case SurfaceClass::Complex: return "Complex";
    default: return "NotTotallyGeodesic";
  }
}

struct StarScalars {
  double lambda = 0.0;
  cxd mu{0.0, 0.0};
};

/// Extracts lambda from X*X and mu from X*Y when both Grams are scalar
/// matrices and lambda is nonzero; throws StarViolation otherwise.
/// For n = 1 every Gram is scalar, so only lambda != 0 can fail.
inline StarScalars check_star(const CMat& X, const CMat& Y, double rel_tol = tol("star")) {
  require_same_shape(X, Y, "check_star");
  if (X.cols() > X.rows()) throw ShapeError("check_star: n <= m required");
  const auto lam = scalar_part(X.adjoint() * X, rel_tol);
  if (!lam)
    throw StarViolation("check_star: X*X is not scalar; Gram =\n" + to_text(X.adjoint() * X));
  if (lam->real() <= rel_tol)  // the Gram is positive semidefinite
    throw StarViolation("check_star: X*X = lambda I needs lambda != 0");
  const auto mu = scalar_part(X.adjoint() * Y, rel_tol);
  if (!mu)
    throw StarViolation("check_star: X*Y is not scalar; Gram =\n" + to_text(X.adjoint() * Y));
  return {lam->real(), *mu};
}

/// Three-way classification of the 2-plane spanned by hat(X), hat(Y).
///
/// Im mu = 0: flat exactly when the bracket [hat X, hat Y] has no u(n) block
/// (checked, though it follows from the scalar Grams) and Y*Y is scalar.
/// Im mu != 0: the plane must be closed under multiplication by i, tested as
/// iX in span_R{X, Y} by real least squares.
inline SurfaceClass classify(const CMat& X, const CMat& Y, double star_tol = tol("star"),
                             double j_tol = tol("j_invariance")) {
  const StarScalars s = check_star(X, Y, star_tol);
  if (std::abs(s.mu.imag()) <= star_tol * (1.0 + std::abs(s.mu))) {
    const CMat upper = -X.adjoint() * Y + Y.adjoint() * X;
    const bool no_un_block = upper.norm() <= star_tol * (1.0 + X.norm() * Y.norm());
    const bool yy_scalar = scalar_part(Y.adjoint() * Y, star_tol).has_value();
    return (no_un_block && yy_scalar) ? SurfaceClass::Flat : SurfaceClass::NotTotallyGeodesic;
  }
  const Eigen::Index len = X.size();
  Eigen::MatrixXd A(2 * len, 2);
  Eigen::VectorXd b(2 * len);
  for (Eigen::Index i = 0; i < len; ++i) {
    const cxd xi = X.reshaped()[i], yi = Y.reshaped()[i], ti = cxd(0, 1) * xi;
    A(2 * i, 0) = xi.real();
    A(2 * i + 1, 0) = xi.imag();
    A(2 * i, 1) = yi.real();
    A(2 * i + 1, 1) = yi.imag();
    b(2 * i) = ti.real();
    b(2 * i + 1) = ti.imag();
  }
  const Eigen::Vector2d c = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  const double resid = (A * c - b).norm();
  return resid <= j_tol * (1.0 + b.norm()) ? SurfaceClass::Complex
                                           : SurfaceClass::NotTotallyGeodesic;
}

/// Validated pair (X, Y) with its scalars, classification, chart generators,
/// and basepoint frame. Charts exist for the Flat and Complex classes only.
struct SurfaceSpec {
  CMat X, Y;
  double lambda = 0;
  cxd mu;
  SurfaceClass tag = SurfaceClass::NotTotallyGeodesic;
  CMat F0;
  CMat gx, gy;  // flat chart generators (orthonormal under metric_inner)
  CMat gc;      // complex chart circle generator

  Eigen::Index n() const { return X.cols(); }
  Eigen::Index m() const { return X.rows(); }
};

inline SurfaceSpec make_surface(CMat X, CMat Y, std::optional<CMat> basepoint = {}) {
  SurfaceSpec s;
  s.X = std::move(X);
  s.Y = std::move(Y);
  const StarScalars sc = check_star(s.X, s.Y);
  s.lambda = sc.lambda;
  s.mu = sc.mu;
  s.tag = classify(s.X, s.Y);
  s.F0 = basepoint ? StiefelFrame(*basepoint).mat() : canonical_frame(s.n(), s.m());
  if (s.F0.rows() != s.n() + s.m() || s.F0.cols() != s.n())
    throw ShapeError("make_surface: basepoint frame shape mismatch");

  if (s.tag == SurfaceClass::Complex) {
    const Su2Triple t = su2_embed(s.X);
    s.gx = t.A;
    // Circle generator with the orientation that makes the lifted phase of a
    // counterclockwise chart loop equal +1/2 of its model area. The conjugate
    // triple (A, -B, -C) satisfies the same su(2) relations.
    s.gc = -0.5 * t.C;
  } else if (s.tag == SurfaceClass::Flat) {
    CMat A = hat(s.X);
    A /= std::sqrt(metric_inner(A, A));
    CMat B = hat(s.Y);
    B -= metric_inner(A, B) * A;
    const double nb = metric_inner(B, B);
    if (nb <= 1e-20) throw DomainError("make_surface: flat pair is degenerate");
    B /= std::sqrt(nb);
    s.gx = A;
    s.gy = B;
  }
  return s;
}

/// Frame over chart coordinates (x, y). Complex charts realize the sphere
/// point (cos 2x, sin 2x cos y, -sin 2x sin y) through the embedded su(2);
/// flat charts are Euclidean in the metric_inner-orthonormal generators.
inline StiefelFrame chart_frame(const SurfaceSpec& s, double x, double y) {
  switch (s.tag) {
    case SurfaceClass::Complex:
      return StiefelFrame(expm_skew(CMat(y * s.gc)).mat() *
                          (expm_skew(CMat(x * s.gx)).mat() * s.F0));
    case SurfaceClass::Flat:
      return StiefelFrame(expm_skew(CMat(x * s.gx + y * s.gy)).mat() * s.F0);
    default:
      throw DomainError("chart_frame: surface is not totally geodesic");
  }
}

inline GrassmannPoint chart_point(const SurfaceSpec& s, double x, double y) {
  return frame_project(chart_frame(s, x, y));
}

/// Signed model area enclosed by the rectangle (p, q) .. (p+a, q+b),
/// traversed counterclockwise, on the complex-case unit sphere chart.
inline double rectangle_area_closed(double p, double a, double b) {
  const double sa = std::sin(p + a), sp = std::sin(p);
  return 2.0 * b * (sa * sa - sp * sp);
}

/// A closed loop in one chart: either an axis-aligned rectangle or an
/// explicitly sampled polyline (first point == last point).
struct LoopSpec {
  enum class Kind { Rectangle, Chart };
  Kind kind = Kind::Rectangle;
  double p = 0, a = 0, b = 0, q = 0;
  std::vector<Eigen::Vector2d> points;
  int orientation = +1;
  int samples = 10000;
};

inline void validate_loop(const LoopSpec& loop) {
  if (loop.orientation != 1 && loop.orientation != -1)
    throw DomainError("LoopSpec: orientation must be +1 or -1");
  if (loop.kind == LoopSpec::Kind::Rectangle) {
    if (!(loop.a > 0) || !(loop.b > 0)) throw DomainError("LoopSpec: rectangle needs a, b > 0");
    if (loop.samples < 8) throw DomainError("LoopSpec: too few samples");
  } else {
    if (loop.points.size() < 5) throw DomainError("LoopSpec: chart loop needs >= 5 points");
    if ((loop.points.front() - loop.points.back()).norm() > tol("loop_closed"))
      throw DomainError("LoopSpec: chart loop is not closed");
    if ((loop.points.size() - 1) % 2 != 0)
      throw DomainError("LoopSpec: chart loop needs an even interval count");
  }
}

/// Fine sampling of a loop. Vertices are kept as nodes exactly: quadrature
/// and the lift integrator both see corners only at segment boundaries.
struct ChartPolyline {
  std::vector<Eigen::Vector2d> xy;
  std::vector<std::ptrdiff_t> seg_start;  // ascending; front() = 0, back() = last index
  std::vector<double> arc;                // cumulative chart arc length per node
};

/// Rectangle loops get `intervals` fine intervals split across the four edges
/// proportionally to edge length (even count per edge, at least 4). Chart
/// loops keep the caller's nodes as one smooth segment.
inline ChartPolyline sample_loop(const LoopSpec& loop, std::ptrdiff_t intervals) {
  validate_loop(loop);
  ChartPolyline out;
  if (loop.kind == LoopSpec::Kind::Chart) {
    out.xy = loop.points;
    if (loop.orientation < 0) std::reverse(out.xy.begin(), out.xy.end());
    out.seg_start = {0, std::ptrdiff_t(out.xy.size()) - 1};
  } else {
    std::vector<Eigen::Vector2d> corners = {{loop.p, loop.q},
                                            {loop.p + loop.a, loop.q},
                                            {loop.p + loop.a, loop.q + loop.b},
                                            {loop.p, loop.q + loop.b},
                                            {loop.p, loop.q}};
    if (loop.orientation < 0) std::reverse(corners.begin(), corners.end());
    const double total = 2.0 * (loop.a + loop.b);
    out.seg_start.push_back(0);
    for (int e = 0; e < 4; ++e) {
      const Eigen::Vector2d from = corners[e], to = corners[e + 1];
      const double len = (to - from).norm();
      auto k = std::ptrdiff_t(std::llround(double(intervals) * len / total / 2.0)) * 2;
      k = std::max<std::ptrdiff_t>(k, 4);
      for (std::ptrdiff_t i = 0; i < k; ++i)
        out.xy.emplace_back(from + (double(i) / double(k)) * (to - from));
      out.seg_start.push_back(std::ptrdiff_t(out.xy.size()));
    }
    out.xy.push_back(corners[4]);
  }
  out.arc.resize(out.xy.size());
  out.arc[0] = 0.0;
  for (size_t i = 1; i < out.xy.size(); ++i)
    out.arc[i] = out.arc[i - 1] + (out.xy[i] - out.xy[i - 1]).norm();
  return out;
}

/// Signed area enclosed by a closed chart polyline, by the Green line
/// integral with the trapezoid rule. Complex charts integrate the density
/// 2 sin 2x of the unit sphere model (antiderivative -cos 2x); flat charts
/// have density 1. Counterclockwise is positive.
inline double area_of_polyline(SurfaceClass tag, const std::vector<Eigen::Vector2d>& xy) {
  if (xy.size() < 2 || (xy.front() - xy.back()).norm() > tol("loop_closed"))
    throw DomainError("area: polyline is not a closed loop");
  const bool complex_chart = tag == SurfaceClass::Complex;
  if (tag == SurfaceClass::NotTotallyGeodesic)
    throw DomainError("area: no chart on a non totally geodesic surface");
  auto f = [&](double x) { return complex_chart ? -std::cos(2.0 * x) : x; };
  double area = 0.0;
  for (size_t i = 0; i + 1 < xy.size(); ++i) {
    if (complex_chart) {
      const double x = xy[i].x();
      if (x < -1e-12 || x > M_PI / 2 + 1e-12)
        throw DomainError("area: loop leaves the chart domain 0 <= x <= pi/2");
    }
    area += 0.5 * (f(xy[i].x()) + f(xy[i + 1].x())) * (xy[i + 1].y() - xy[i].y());
  }
  return area;
}

/// Signed enclosed area of a loop under the surface's chart metric.
inline double area_numeric(const SurfaceSpec& s, const LoopSpec& loop) {
  return area_of_polyline(s.tag, sample_loop(loop, loop.samples).xy);
}

}  // namespace ghf
