// Acceptance gate: one line per criterion, exit 0 only when every criterion
// passes. Tolerances are pinned here on purpose; the runtime registry cannot
// loosen them.

#include <grasshopf/holonomy.hpp>
#include <grasshopf/io.hpp>
#include <grasshopf/lie.hpp>
#include <grasshopf/random.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

using namespace ghf;

namespace {

int failures = 0;

void report(int idx, bool pass, const std::string& label, const std::string& detail) {
  std::printf("criterion %2d: %s  %s (%s)\n", idx, pass ? "PASS" : "FAIL", label.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

CMat one_by_one(cxd v) {
  CMat X(1, 1);
  X(0, 0) = v;
  return X;
}

LoopSpec rect(double p, double a, double b, double q, int orientation = 1) {
  LoopSpec loop;
  loop.p = p;
  loop.a = a;
  loop.b = b;
  loop.q = q;
  loop.orientation = orientation;
  return loop;
}

LoopSpec circle(double x0, double y0, double r, std::size_t k = 2000) {
  LoopSpec loop;
  loop.kind = LoopSpec::Kind::Chart;
  for (std::size_t i = 0; i <= k; ++i) {
    const double t = 2 * M_PI * double(i) / double(k);
    loop.points.emplace_back(x0 + r * std::cos(t), y0 + r * std::sin(t));
  }
  loop.points.back() = loop.points.front();
  return loop;
}

// 1. coefficient formula vs double-bracket oracle across shapes, < 10 s
void criterion_1() {
  Timer timer;
  Rng rng(1001);
  double worst = 0.0;
  const std::vector<std::pair<Eigen::Index, Eigen::Index>> shapes = {
      {1, 1}, {1, 3}, {2, 2}, {2, 3}, {3, 5}};
  for (auto [n, m] : shapes)
    for (int t = 0; t < 1000; ++t) {
      const CMat X = random_cmat(rng, m, n), Y = random_cmat(rng, m, n);
      const CMat got = lemma_coeffs(X, Y), want = double_bracket_oracle(X, Y);
      worst = std::max(worst, (got - want).norm() / std::max(want.norm(), 1e-300));
    }
  const double secs = timer.seconds();
  report(1, worst <= 1e-10 && secs < 10.0, "tangent coefficient formula vs bracket oracle",
         "max_rel_err=" + fmt(worst) + " over 5000 pairs, " + fmt(secs) + "s");
}

// 2. lifted phase vs closed-form area on the reference rectangle, < 5 s
double g_drift_at_1e4 = 1.0;  // reused by criterion 9
void criterion_2() {
  Timer timer;
  const SurfaceSpec s = make_surface(one_by_one(1.0), one_by_one(cxd(0, 1)));
  const double p = 0.3, a = 0.7, b = 1.1;
  const ChartLoopRun run = run_chart_loop(s, rect(p, a, b, 0.2), 10000);
  g_drift_at_1e4 = run.lift.max_orth_drift;
  const double half_area = b * (std::pow(std::sin(p + a), 2) - std::pow(std::sin(p), 2));
  const double gap_ode = std::abs(run.hol.theta - half_area);
  const double gap_law = std::abs(run.hol.theta - 0.5 * rectangle_area_closed(p, a, b));
  const double secs = timer.seconds();
  report(2, gap_ode <= 1e-6 && gap_law <= 1e-6 && secs < 5.0,
         "phase equals half the rectangle area at 1e4 steps",
         "|theta-b(sin^2(p+a)-sin^2 p)|=" + fmt(gap_ode) + ", |theta-area/2|=" + fmt(gap_law) +
             ", " + fmt(secs) + "s");
}

// 3. full-sphere rectangle: area 4 pi, phase 0 mod 2 pi
void criterion_3() {
  const SurfaceSpec s = make_surface(one_by_one(1.0), one_by_one(cxd(0, 1)));
  const ChartLoopRun run = run_chart_loop(s, rect(0.0, M_PI / 2, 2 * M_PI, 0.2), 10000);
  const double area_gap = std::abs(run.hol.area - 4 * M_PI);
  const double phase = std::abs(wrap_angle(run.hol.theta));
  report(3, area_gap <= 1e-8 && phase <= 1e-5, "full-sphere loop is trivial",
         "|area-4pi|=" + fmt(area_gap) + ", |theta mod 2pi|=" + fmt(phase));
}

// 4. flat surfaces: identity holonomy on 10 rectangles and 3 circles
void criterion_4() {
  CMat X12 = CMat::Zero(3, 1), Y12 = CMat::Zero(3, 1);
  X12(0, 0) = 1;
  Y12(1, 0) = 1;
  Rng rng(1004);
  const auto pair24 = random_flat_pair(rng, 2, 4);
  const std::vector<SurfaceSpec> surfaces = {make_surface(X12, Y12),
                                             make_surface(pair24.first, pair24.second)};
  std::vector<LoopSpec> loops = {
      rect(0.0, 0.5, 0.5, 0.0),        rect(-0.3, 0.8, 0.4, 0.1, -1),
      rect(0.2, 1.0, 0.7, -0.5),       rect(-1.0, 0.6, 1.2, 0.4),
      rect(0.7, 0.3, 0.3, 0.7, -1),    rect(-0.2, 1.5, 0.2, -0.9),
      rect(0.05, 0.45, 0.85, 0.35),    rect(-0.6, 0.9, 0.9, 0.6, -1),
      rect(1.1, 0.4, 0.6, -0.2),       rect(-0.15, 0.7, 1.1, 0.05),
      circle(0.0, 0.0, 0.4),           circle(0.3, -0.2, 0.25),
      circle(-0.1, 0.4, 0.5)};
  double worst = 0.0;
  bool flat_tags = true;
  for (const SurfaceSpec& s : surfaces) {
    flat_tags = flat_tags && s.tag == SurfaceClass::Flat;
    for (const LoopSpec& loop : loops) {
      const ChartLoopRun run = run_chart_loop(s, loop, 2000);
      worst = std::max(worst, (run.hol.V - CMat::Identity(s.n(), s.n())).norm());
    }
  }
  report(4, flat_tags && worst <= 1e-7, "flat surfaces carry identity holonomy",
         "max ||V-I||=" + fmt(worst) + " over 2 surfaces x 13 loops");
}

// 5. scalar holonomy at n=2, m=3 with the half-area phase, lambda-independent
void criterion_5() {
  Rng rng(1005);
  const CMat Q = random_star_X(rng, 2, 3, 1.0);
  const SurfaceSpec s1 = make_surface(Q, CMat(cxd(0, 1) * Q));
  const SurfaceSpec s2 =
      make_surface(CMat(std::sqrt(2.0) * Q), CMat(cxd(0, std::sqrt(2.0)) * Q));
  const std::vector<LoopSpec> loops = {rect(0.3, 0.7, 1.1, 0.4), rect(0.1, 0.5, 0.8, -0.3),
                                       rect(0.5, 0.9, 0.6, 0.0, -1), circle(0.7, 0.0, 0.4),
                                       circle(0.5, 0.3, 0.3)};
  double worst_resid = 0.0, worst_ratio = 0.0, worst_lambda_gap = 0.0;
  for (const LoopSpec& loop : loops) {
    const ChartLoopRun r1 = run_chart_loop(s1, loop, 10000);
    const ChartLoopRun r2 = run_chart_loop(s2, loop, 10000);
    worst_resid = std::max({worst_resid, r1.hol.scalar_residual, r2.hol.scalar_residual});
    worst_ratio = std::max({worst_ratio, std::abs(*r1.hol.ratio - 0.5),
                            std::abs(*r2.hol.ratio - 0.5)});
    worst_lambda_gap = std::max(worst_lambda_gap, std::abs(r1.hol.theta - r2.hol.theta));
  }
  report(5, worst_resid <= 1e-6 * 2 && worst_ratio <= 1e-4 && worst_lambda_gap <= 1e-10,
         "rank-2 holonomy is scalar with ratio 1/2 at both scales",
         "max scalar_residual=" + fmt(worst_resid) + ", max |ratio-1/2|=" + fmt(worst_ratio) +
             ", lambda gap=" + fmt(worst_lambda_gap));
}

// 6. classifier three-way examples plus the scalar-Gram perturbation flip
void criterion_6() {
  Rng rng(1006);
  const CMat Xc = random_star_X(rng, 2, 3, 1.5);
  const bool c1 = classify(Xc, CMat(cxd(0, 1) * Xc)) == SurfaceClass::Complex;

  CMat X12 = CMat::Zero(3, 1), Y12 = CMat::Zero(3, 1);
  X12(0, 0) = 1;
  Y12(1, 0) = 1;
  const bool c2 = classify(X12, Y12) == SurfaceClass::Flat;

  CMat Xn = CMat::Zero(3, 2), Yn = CMat::Zero(3, 2);
  Xn.topLeftCorner(2, 2) = CMat::Identity(2, 2);
  Yn(2, 0) = 1;
  const bool c3 = classify(Xn, Yn) == SurfaceClass::NotTotallyGeodesic;

  CMat X24 = CMat::Zero(6, 2), Y24 = CMat::Zero(6, 2);
  X24(0, 0) = 1;
  X24(1, 1) = 1;
  Y24(2, 0) = 1;
  Y24(3, 1) = 1;
  const bool c4 = classify(X24, Y24) == SurfaceClass::Flat;
  CMat Yp = Y24;
  Yp.col(0) *= 1.0 + 1e-3;
  const bool c5 = classify(X24, Yp) == SurfaceClass::NotTotallyGeodesic;

  report(6, c1 && c2 && c3 && c4 && c5, "classifier three-way examples and perturbation flip",
         std::string("complex=") + (c1 ? "ok" : "BAD") + " flat=" + (c2 ? "ok" : "BAD") +
             " ntg=" + (c3 ? "ok" : "BAD") + " flip=" + (c4 && c5 ? "ok" : "BAD"));
}

// 7. sphere model: projection equivariance and T-squaring over 1e3 samples
void criterion_7() {
  Rng rng(1007);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> ux(0.0, M_PI / 2), uy(-M_PI, M_PI);
  double equivariance = 0.0, squaring = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const SU2Element w = SU2Element::normalized(g(rng), g(rng), g(rng), g(rng));
    const SU2Element v = SU2Element::normalized(g(rng), g(rng), g(rng), g(rng));
    const SU2Element wv = su2_mul(w, v);
    const Eigen::Matrix4d lhs = su2_real4(wv) * su2_itilde(wv);
    const Eigen::Matrix4d rhs = su2_real4(w) * (su2_real4(v) * su2_itilde(v)) * su2_itilde(w);
    equivariance = std::max(equivariance, (lhs - rhs).norm());

    const double x = ux(rng), y = uy(rng);
    const Eigen::Vector3d want(std::cos(2 * x), std::sin(2 * x) * std::cos(y),
                               std::sin(2 * x) * std::sin(y));
    squaring = std::max(squaring, (su2_project(su2_T(x, y)) - want).norm());
  }
  report(7, equivariance <= 1e-12 && squaring <= 1e-12, "sphere model identities",
         "equivariance=" + fmt(equivariance) + ", T-squaring=" + fmt(squaring) +
             " over 1000 samples");
}

// 8. embedded su(2) bracket relations for conformal X
void criterion_8() {
  Rng rng(1008);
  double worst = 0.0;
  for (auto [n, m] : std::vector<std::pair<Eigen::Index, Eigen::Index>>{{1, 1}, {2, 3}, {3, 5}})
    for (double lambda : {1.0, 2.5}) {
      const CMat X = random_star_X(rng, n, m, lambda);
      const Su2Triple t = su2_embed(X);
      worst = std::max({worst, (bracket(t.A, t.B) - 2.0 * t.C).norm(),
                        (bracket(t.C, t.A) - 2.0 * t.B).norm(),
                        (bracket(t.C, t.B) + 2.0 * t.A).norm()});
    }
  report(8, worst <= 1e-10, "embedded su(2) bracket relations",
         "max bracket defect=" + fmt(worst) + " over 6 conformal X");
}

// 9. integrator health: drift, observed order, gauge equivariance
void criterion_9() {
  const SurfaceSpec s = make_surface(one_by_one(1.0), one_by_one(cxd(0, 1)));
  const LoopSpec loop = rect(0.3, 0.7, 1.1, 0.2);
  const double ref = run_chart_loop(s, loop, 100000).hol.theta;
  std::vector<double> err;
  for (std::size_t N : {std::size_t(100), std::size_t(1000), std::size_t(10000)})
    err.push_back(std::abs(wrap_angle(run_chart_loop(s, loop, N).hol.theta - ref)));
  const double order = std::log10(err[0] / err[1]);

  Rng rng(1009);
  const CMat Q = random_star_X(rng, 2, 3, 1.0);
  const SurfaceSpec s23 = make_surface(Q, CMat(cxd(0, 1) * Q));
  const ChartPath cp = chart_base_path(s23, rect(0.4, 0.8, 0.9, 0.1), 2000);
  const StiefelFrame F0(chart_frame(s23, cp.line.xy.front().x(), cp.line.xy.front().y()));
  const Unitary g(random_unitary(rng, 2));
  const double gauge = gauge_transport_check(cp.path, F0, g);

  report(9,
         g_drift_at_1e4 <= 1e-9 && order >= 3.5 && order <= 4.5 && gauge <= 1e-7,
         "integrator drift, observed order, gauge equivariance",
         "drift=" + fmt(g_drift_at_1e4) + ", order=" + fmt(order) + ", gauge=" + fmt(gauge));
}

// 10. full property suite under a fixed seed, < 60 s
void criterion_10() {
  Timer timer;
  const std::string cmd =
      std::string(UNIT_TESTS_PATH) + " --rng-seed 4242 > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  const bool ok = WIFEXITED(raw) && WEXITSTATUS(raw) == 0;
  const double secs = timer.seconds();
  report(10, ok && secs < 60.0, "property suite under fixed seed",
         std::string("exit=") + (ok ? "0" : "nonzero") + ", " + fmt(secs) + "s");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures > 0) {
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("acceptance: all 10 criteria passed\n");
  return 0;
}
