#pragma once

#include <grasshopf/cmat.hpp>
#include <grasshopf/grassmann.hpp>
#include <grasshopf/surfaces.hpp>
#include <grasshopf/tolerances.hpp>

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace ghf {

/// wraps an angle into (-pi, pi]
inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

/// Sampled base curve t in [0,1] -> projector, uniform in the index parameter.
/// seg_start marks smooth-segment boundaries (finite differences never cross
/// them); arc carries cumulative chart arc length for residual normalization.
struct BasePath {
  std::vector<CMat> P;
  std::vector<std::size_t> seg_start;
  std::vector<double> arc;

  std::size_t size() const { return P.size(); }
  double h() const { return 1.0 / double(P.size() - 1); }
  bool is_closed(double eps) const { return (P.front() - P.back()).norm() <= eps; }
};

/// validates samples/segments and fills defaults (one segment, arc = t)
inline BasePath make_base_path(std::vector<CMat> samples, std::vector<std::size_t> seg_start = {},
                               std::vector<double> arc = {}) {
  if (samples.size() < 5) throw ShapeError("base path needs at least 5 samples");
  const std::size_t last = samples.size() - 1;
  for (const CMat& sample : samples) (void)GrassmannPoint(sample);
  if (seg_start.empty()) seg_start = {0, last};
  if (seg_start.front() != 0 || seg_start.back() != last)
    throw DomainError("segment table must start at 0 and end at the last sample");
  for (std::size_t s = 0; s + 1 < seg_start.size(); ++s) {
    const std::size_t len = seg_start[s + 1] - seg_start[s];
    if (seg_start[s + 1] <= seg_start[s] || len < 4 || len % 2 != 0)
      throw DomainError("each segment needs an even number of intervals, at least 4");
  }
  if (arc.empty()) {
    arc.resize(samples.size());
    for (std::size_t i = 0; i <= last; ++i) arc[i] = double(i) / double(last);
  }
  if (arc.size() != samples.size()) throw ShapeError("arc table size mismatch");
  return BasePath{std::move(samples), std::move(seg_start), std::move(arc)};
}

namespace detail {

// 4th-order finite difference of P at node j inside segment [b, e], spacing h
inline CMat fd4_velocity(const std::vector<CMat>& P, std::size_t b, std::size_t e, std::size_t j,
                         double h) {
  const double s = 1.0 / (12.0 * h);
  if (j >= b + 2 && j + 2 <= e)
    return s * (-P[j + 2] + 8.0 * P[j + 1] - 8.0 * P[j - 1] + P[j - 2]);
  if (j == b) return s * (-25.0 * P[b] + 48.0 * P[b + 1] - 36.0 * P[b + 2] + 16.0 * P[b + 3] - 3.0 * P[b + 4]);
  if (j == b + 1) return s * (-3.0 * P[b] - 10.0 * P[b + 1] + 18.0 * P[b + 2] - 6.0 * P[b + 3] + P[b + 4]);
  if (j == e) return s * (25.0 * P[e] - 48.0 * P[e - 1] + 36.0 * P[e - 2] - 16.0 * P[e - 3] + 3.0 * P[e - 4]);
  return s * (3.0 * P[e] + 10.0 * P[e - 1] - 18.0 * P[e - 2] + 6.0 * P[e - 3] - P[e - 4]);
}

// segment [b, e] containing node j; boundary nodes resolve to the segment they open
inline std::pair<std::size_t, std::size_t> segment_of(const BasePath& path, std::size_t j) {
  for (std::size_t s = 0; s + 1 < path.seg_start.size(); ++s)
    if (j < path.seg_start[s + 1] || s + 2 == path.seg_start.size())
      if (j >= path.seg_start[s]) return {path.seg_start[s], path.seg_start[s + 1]};
  throw DomainError("sample index outside path");
}

}  // namespace detail

/// dP/dt at sample j (right-sided derivative on segment boundaries)
inline CMat path_velocity(const BasePath& path, std::size_t j) {
  auto [b, e] = detail::segment_of(path, j);
  return detail::fd4_velocity(path.P, b, e, j, path.h());
}

/// Horizontal lift evaluated at every other path sample (the integrator nodes).
struct LiftResult {
  std::vector<CMat> F;
  std::vector<std::size_t> node;  ///< path sample index of each frame
  std::vector<double> t;
  double max_orth_drift = 0.0;
  double max_fiber_err = 0.0;
  double max_horiz_residual = 0.0;
  double max_horiz_ratio = 0.0;
};

/// Discrete horizontality F*(dF) = 0 checked on frame triples interior to a
/// segment; the step scale is the local chart arc length. Nodes without an
/// admissible triple carry residual 0.
struct HorizontalityScan {
  std::vector<double> residual, bound;
  double max_residual = 0.0;
  double max_ratio = 0.0;
};

inline HorizontalityScan horizontality_scan(const BasePath& path, const LiftResult& lift) {
  HorizontalityScan scan;
  scan.residual.assign(lift.F.size(), 0.0);
  scan.bound.assign(lift.F.size(), 0.0);
  for (std::size_t r = 1; r + 1 < lift.F.size(); ++r) {
    auto [b, e] = detail::segment_of(path, lift.node[r]);
    if (lift.node[r - 1] < b || lift.node[r + 1] > e) continue;
    const double gap = path.arc[lift.node[r + 1]] - path.arc[lift.node[r - 1]];
    if (gap < 1e-15) continue;
    scan.residual[r] = (lift.F[r].adjoint() * (lift.F[r + 1] - lift.F[r - 1])).norm() / gap;
    scan.bound[r] = 5.0 * (0.5 * gap) * (0.5 * gap) + 1e-8;
    scan.max_residual = std::max(scan.max_residual, scan.residual[r]);
    scan.max_ratio = std::max(scan.max_ratio, scan.residual[r] / scan.bound[r]);
  }
  return scan;
}

/// Integrates F' = P'(t) F by classical RK4 with a polar retraction per step.
/// Each RK4 step spans two path samples; velocities come from 4th-order
/// finite differences confined to one smooth segment.
inline LiftResult horizontal_lift(const BasePath& path, const StiefelFrame& F0) {
  if ((F0.mat() * F0.mat().adjoint() - path.P.front()).norm() > tol("basepoint"))
    throw InvariantError("initial frame does not project onto the path start");
  const double h = path.h(), H = 2.0 * h;
  const auto& P = path.P;

  LiftResult out;
  out.F.reserve(P.size() / 2 + 1);
  CMat F = F0.mat();
  const CMat In = CMat::Identity(F.cols(), F.cols());
  auto record = [&](std::size_t j) {
    out.F.push_back(F);
    out.node.push_back(j);
    out.t.push_back(double(j) * h);
    out.max_orth_drift = std::max(out.max_orth_drift, (F.adjoint() * F - In).norm());
    out.max_fiber_err = std::max(out.max_fiber_err, (F * F.adjoint() - P[j]).norm());
  };
  record(0);

  for (std::size_t s = 0; s + 1 < path.seg_start.size(); ++s) {
    const std::size_t b = path.seg_start[s], e = path.seg_start[s + 1];
    if (e - b < 4 || (e - b) % 2 != 0)
      throw DomainError("each segment needs an even number of intervals, at least 4");
    CMat A0 = detail::fd4_velocity(P, b, e, b, h);
    for (std::size_t i = b; i + 2 <= e; i += 2) {
      const CMat A1 = detail::fd4_velocity(P, b, e, i + 1, h);
      CMat A2 = detail::fd4_velocity(P, b, e, i + 2, h);
      const CMat k1 = A0 * F;
      const CMat k2 = A1 * (F + (0.5 * H) * k1);
      const CMat k3 = A1 * (F + (0.5 * H) * k2);
      const CMat k4 = A2 * (F + H * k3);
      F = polar_retract(F + (H / 6.0) * (k1 + 2.0 * (k2 + k3) + k4));
      record(i + 2);
      A0 = std::move(A2);
    }
  }

  const HorizontalityScan scan = horizontality_scan(path, out);
  out.max_horiz_residual = scan.max_residual;
  out.max_horiz_ratio = scan.max_ratio;
  return out;
}

/// Holonomy displacement of a closed lift: V = F0* F(1), phase, and how far
/// V sits from the scalar circle e^{i theta} I.
struct HolonomyResult {
  CMat V;
  double theta = 0.0;
  double scalar_residual = 0.0;
  double area = 0.0;                ///< signed chart area, filled by the caller
  std::optional<double> ratio;      ///< theta / area when area is nonzero
};

inline HolonomyResult holonomy_from_frames(const CMat& F0, const CMat& F1) {
  const Eigen::Index n = F0.cols();
  HolonomyResult r;
  r.V = F0.adjoint() * F1;
  if ((r.V.adjoint() * r.V - CMat::Identity(n, n)).norm() > tol("holonomy_unitary"))
    throw NumericalError("holonomy displacement is not unitary; lift failed:\n" + to_text(r.V));
  r.theta = std::arg(r.V.trace() / double(n));
  r.scalar_residual = (r.V - std::polar(1.0, r.theta) * CMat::Identity(n, n)).norm();
  return r;
}

/// Lift of one closed path together with its displacement.
struct LoopRun {
  LiftResult lift;
  HolonomyResult hol;
};

inline LoopRun run_loop(const BasePath& path, const StiefelFrame& F0) {
  if (!path.is_closed(tol("loop_closed") * (1.0 + path.P.front().norm())))
    throw DomainError("holonomy needs a closed base path");
  LoopRun run;
  run.lift = horizontal_lift(path, F0);
  run.hol = holonomy_from_frames(F0.mat(), run.lift.F.back());
  return run;
}

inline HolonomyResult holonomy_displacement(const BasePath& path, const StiefelFrame& F0) {
  return run_loop(path, F0).hol;
}

/// trapezoid rule for the fiber phase ODE z' = sin^2(x) y'
inline double z_ode_delta(const std::vector<Eigen::Vector2d>& xy) {
  double z = 0.0;
  for (std::size_t i = 0; i + 1 < xy.size(); ++i) {
    const double f0 = std::pow(std::sin(xy[i].x()), 2);
    const double f1 = std::pow(std::sin(xy[i + 1].x()), 2);
    z += 0.5 * (f0 + f1) * (xy[i + 1].y() - xy[i].y());
  }
  return z;
}

/// right-equivariance audit: || V(F0 g) - g* V(F0) g ||
inline double gauge_transport_check(const BasePath& path, const StiefelFrame& F0,
                                    const Unitary& g) {
  const HolonomyResult base = holonomy_displacement(path, F0);
  const HolonomyResult moved = holonomy_displacement(path, StiefelFrame(F0.mat() * g.mat()));
  return (moved.V - g.mat().adjoint() * base.V * g.mat()).norm();
}

/// Chart loop discretized for the integrator: two path samples per RK4 step.
struct ChartPath {
  BasePath path;
  ChartPolyline line;
};

inline ChartPath chart_base_path(const SurfaceSpec& spec, const LoopSpec& loop,
                                 std::size_t steps) {
  ChartPath cp;
  cp.line = sample_loop(loop, 2 * steps);
  cp.path.P.reserve(cp.line.xy.size());
  for (const auto& pt : cp.line.xy) cp.path.P.push_back(chart_point(spec, pt.x(), pt.y()).mat());
  cp.path.seg_start.assign(cp.line.seg_start.begin(), cp.line.seg_start.end());
  cp.path.arc = cp.line.arc;
  return cp;
}

/// One chart loop end to end: lift, displacement, area, and the law gap
/// (theta - area/2 modulo 2 pi on Complex surfaces, ||V - I|| on Flat ones).
struct ChartLoopRun {
  ChartPath cp;
  LiftResult lift;
  HolonomyResult hol;
  double z_delta = 0.0;
  double law_gap = 0.0;
};

inline ChartLoopRun run_chart_loop(const SurfaceSpec& spec, const LoopSpec& loop,
                                   std::size_t steps) {
  validate_loop(loop);
  ChartLoopRun r;
  r.cp = chart_base_path(spec, loop, steps);
  const StiefelFrame F0(chart_frame(spec, r.cp.line.xy.front().x(), r.cp.line.xy.front().y()));
  r.lift = horizontal_lift(r.cp.path, F0);
  r.hol = holonomy_from_frames(F0.mat(), r.lift.F.back());
  r.hol.area = area_of_polyline(spec.tag, r.cp.line.xy);
  if (std::abs(r.hol.area) > 1e-12) r.hol.ratio = r.hol.theta / r.hol.area;
  if (spec.tag == SurfaceClass::Complex) {
    r.z_delta = z_ode_delta(r.cp.line.xy);
    r.law_gap = std::abs(wrap_angle(r.hol.theta - 0.5 * r.hol.area));
  } else {
    r.law_gap = (r.hol.V - CMat::Identity(r.hol.V.rows(), r.hol.V.cols())).norm();
  }
  return r;
}

}  // namespace ghf
