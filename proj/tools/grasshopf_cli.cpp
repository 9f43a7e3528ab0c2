#include <CLI11.hpp>

#include <grasshopf/holonomy.hpp>
#include <grasshopf/io.hpp>
#include <grasshopf/lie.hpp>
#include <grasshopf/random.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace ghf;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void apply_tol_overrides(const std::vector<std::string>& overrides) {
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--tol expects <name>=<value>, got '" + kv + "'");
    set_tol(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
  }
}

SU2Element random_su2(Rng& rng) {
  std::normal_distribution<double> g;
  return SU2Element::normalized(g(rng), g(rng), g(rng), g(rng));
}

LoopSpec default_rectangle() {
  LoopSpec loop;
  loop.p = 0.3;
  loop.a = 0.7;
  loop.b = 1.1;
  loop.q = 0.2;
  return loop;
}

// ---- lemma-check ------------------------------------------------------------

int run_lemma_check(Eigen::Index n, Eigen::Index m, long trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (long t = 0; t < trials; ++t) {
    const CMat X = random_cmat(rng, m, n), Y = random_cmat(rng, m, n);
    const CMat got = lemma_coeffs(X, Y), want = double_bracket_oracle(X, Y);
    worst = std::max(worst, (got - want).norm() / std::max(want.norm(), 1e-300));
  }
  if (trials == 0) {
    std::cout << "lemma-check: no trials\n";
    return 0;
  }
  std::cout << "lemma-check: n=" << n << " m=" << m << " trials=" << trials
            << " max_rel_err=" << num17(worst) << " tol=" << num17(tol("lemma")) << "\n";
  return worst <= tol("lemma") ? 0 : 1;
}

// ---- su2-check ----------------------------------------------------------------

int run_su2_check(long trials, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> ux(0.0, M_PI / 2), uy(-M_PI, M_PI);
  double equivariance = 0.0, squaring = 0.0, circle = 0.0;
  for (long t = 0; t < trials; ++t) {
    const SU2Element w = random_su2(rng), v = random_su2(rng);
    const SU2Element wv = su2_mul(w, v);
    const Eigen::Matrix4d lhs = su2_real4(wv) * su2_itilde(wv);
    const Eigen::Matrix4d rhs =
        su2_real4(w) * (su2_real4(v) * su2_itilde(v)) * su2_itilde(w);
    equivariance = std::max(equivariance, (lhs - rhs).norm());

    const double x = ux(rng), y = uy(rng);
    const Eigen::Vector3d want(std::cos(2 * x), std::sin(2 * x) * std::cos(y),
                               std::sin(2 * x) * std::sin(y));
    squaring = std::max(squaring, (su2_project(su2_T(x, y)) - want).norm());

    circle = std::max(circle,
                      (su2_project(su2_mul(w, su2_circle(uy(rng)))) - su2_project(w)).norm());
  }
  if (trials == 0) {
    std::cout << "su2-check: no trials\n";
    return 0;
  }
  const double worst = std::max({equivariance, squaring, circle});
  std::cout << "su2-check: trials=" << trials << " equivariance=" << num17(equivariance)
            << " t_squaring=" << num17(squaring) << " circle_invariance=" << num17(circle)
            << " tol=" << num17(tol("su2_model")) << "\n";
  return worst <= tol("su2_model") ? 0 : 1;
}

// ---- surface construction shared by classify / holonomy ----------------------

struct PairArgs {
  std::string surface = "complex";
  std::string x_path, y_path;
  Eigen::Index n = 1, m = 1;
  std::uint64_t seed = 42;
};

std::pair<CMat, CMat> build_pair(const PairArgs& a) {
  if (a.surface == "custom") {
    if (a.x_path.empty() || a.y_path.empty())
      throw IoError("--surface custom needs --x and --y matrix files");
    return {load_cmat(a.x_path), load_cmat(a.y_path)};
  }
  if (a.n < 1 || a.m < a.n)
    throw IoError("need 1 <= n <= m for generated surfaces");
  Rng rng(a.seed);
  if (a.surface == "complex") {
    const CMat X = random_star_X(rng, a.n, a.m);
    return {X, CMat(cxd(0, 1) * X)};
  }
  if (a.m < 2 * a.n)
    throw IoError("flat surfaces need m >= 2n");
  return random_flat_pair(rng, a.n, a.m);
}

// ---- classify -----------------------------------------------------------------

int run_classify(const PairArgs& a) {
  const auto [X, Y] = build_pair(a);
  StarScalars s;
  try {
    s = check_star(X, Y);
  } catch (const StarViolation& e) {
    std::cout << "classification=StarViolation\n";
    std::cerr << e.what() << "\n";
    return 1;
  }
  const SurfaceClass c = classify(X, Y);
  std::cout << "classification=" << to_string(c) << "\n";
  std::cout << "lambda=" << num17(s.lambda) << "\n";
  std::cout << "mu=" << num17(s.mu.real()) << (s.mu.imag() < 0 ? "" : "+")
            << num17(s.mu.imag()) << "i\n";
  if (c == SurfaceClass::Flat) {
    const auto eta = scalar_part(CMat(Y.adjoint() * Y), tol("star"));
    if (eta) std::cout << "eta=" << num17(eta->real()) << "\n";
  }
  return 0;
}

// ---- holonomy -------------------------------------------------------------------

struct HolonomyArgs {
  PairArgs pair;
  std::size_t steps = 10000;
  std::string loops_path;
  std::string output = "json";
  std::string out_path;
};

int run_holonomy(const HolonomyArgs& a) {
  const auto [X, Y] = build_pair(a.pair);
  const SurfaceSpec spec = make_surface(X, Y);
  if (spec.tag == SurfaceClass::NotTotallyGeodesic) {
    std::cerr << "surface is not totally geodesic; no chart to integrate over\n";
    return 2;
  }
  const std::vector<LoopSpec> loops =
      a.loops_path.empty() ? std::vector<LoopSpec>{default_rectangle()}
                           : load_loops(a.loops_path);

  std::vector<ReportRow> rows;
  double max_gap = 0.0;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const ChartLoopRun run = run_chart_loop(spec, loops[i], a.steps);
    const std::string id = "loop-" + std::to_string(i);
    std::cerr << id << " wall_seconds=" << seconds_since(t0) << "\n";
    rows.push_back(make_report_row(id, spec, run));
    max_gap = std::max(max_gap, run.law_gap);
  }

  const bool complex_law = spec.tag == SurfaceClass::Complex;
  const double gate = complex_law ? tol("law_complex") : tol("law_flat");
  const bool ok = max_gap <= gate;

  std::string text;
  if (a.output == "json") {
    json doc;
    doc["config"]["surface"] = a.pair.surface;
    doc["config"]["n"] = spec.n();
    doc["config"]["m"] = spec.m();
    doc["config"]["seed"] = a.pair.seed;
    doc["config"]["steps"] = a.steps;
    doc["config"]["classification"] = to_string(spec.tag);
    doc["config"]["loops"] = json::array();
    for (const LoopSpec& loop : loops) doc["config"]["loops"].push_back(loop_to_json(loop));
    doc["rows"] = json::array();
    for (const ReportRow& row : rows) doc["rows"].push_back(report_row_to_json(row));
    doc["summary"]["law"] = complex_law ? "theta = area/2 (mod 2pi)" : "V = I";
    doc["summary"]["max_gap"] = max_gap;
    doc["summary"]["tolerance"] = gate;
    doc["summary"]["ok"] = ok;
    text = doc.dump(2) + "\n";
  } else {
    text = report_to_csv(rows);
    std::cerr << "summary: max_gap=" << num17(max_gap) << " tolerance=" << num17(gate)
              << " ok=" << (ok ? "yes" : "no") << "\n";
  }
  if (a.out_path.empty())
    std::cout << text;
  else
    write_text_file(a.out_path, text);
  return ok ? 0 : 1;
}

// ---- convergence ---------------------------------------------------------------

int run_convergence(const PairArgs& a) {
  const auto [X, Y] = build_pair(a);
  const SurfaceSpec spec = make_surface(X, Y);
  if (spec.tag != SurfaceClass::Complex)
    throw IoError(std::string("order study needs a complex-type surface, got ") +
                  to_string(spec.tag) + ": only the phase carries a truncation error to track");
  const LoopSpec loop = default_rectangle();

  const auto t0 = std::chrono::steady_clock::now();
  const double ref = run_chart_loop(spec, loop, 100000).hol.theta;
  std::vector<std::size_t> ladder = {100, 1000, 10000};
  std::vector<double> err;
  std::string table = "steps,theta,abs_error\n";
  for (std::size_t N : ladder) {
    const double theta = run_chart_loop(spec, loop, N).hol.theta;
    err.push_back(std::abs(wrap_angle(theta - ref)));
    table += std::to_string(N) + "," + num17(theta) + "," + num17(err.back()) + "\n";
  }
  std::cerr << "wall_seconds=" << seconds_since(t0) << "\n";

  // finer pairs sit on the round-off floor, so the order comes from the
  // coarsest pair of the ladder
  const double order = std::log10(err[0] / err[1]);
  std::cout << table;
  std::cout << "observed_order=" << num17(order) << " window=[" << num17(tol("order_low"))
            << "," << num17(tol("order_high")) << "]\n";
  return (order >= tol("order_low") && order <= tol("order_high")) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stiefel bundle holonomy toolkit: classify totally geodesic 2-planes in the "
               "Grassmannian and verify the phase/area law of their lifted loops"};
  app.require_subcommand(1);
  app.fallthrough();
  std::vector<std::string> tol_overrides;
  app.add_option("--tol", tol_overrides, "override a named tolerance, <name>=<value>");

  Eigen::Index n = 1, m = 1;
  long trials = 1000;
  std::uint64_t seed = 42;

  CLI::App* lemma = app.add_subcommand("lemma-check", "coefficient formula vs bracket oracle");
  lemma->add_option("--n", n, "columns of X");
  lemma->add_option("--m", m, "rows of X");
  lemma->add_option("--trials", trials, "random pairs to test");
  lemma->add_option("--seed", seed, "RNG seed");

  CLI::App* su2 = app.add_subcommand("su2-check", "sphere model projection identities");
  su2->add_option("--trials", trials, "random samples to test");
  su2->add_option("--seed", seed, "RNG seed");

  PairArgs pair;
  CLI::App* cls = app.add_subcommand("classify", "classify the 2-plane spanned by X and Y");
  cls->add_option("--surface", pair.surface, "complex | flat | custom")
      ->check(CLI::IsMember({"complex", "flat", "custom"}));
  cls->add_option("--x", pair.x_path, "X matrix JSON file (custom)");
  cls->add_option("--y", pair.y_path, "Y matrix JSON file (custom)");
  cls->add_option("--n", pair.n, "generated surface: columns");
  cls->add_option("--m", pair.m, "generated surface: rows");
  cls->add_option("--seed", pair.seed, "RNG seed");

  HolonomyArgs hol;
  CLI::App* holo = app.add_subcommand("holonomy", "lift loops and report the phase/area law");
  holo->add_option("--surface", hol.pair.surface, "complex | flat | custom")
      ->check(CLI::IsMember({"complex", "flat", "custom"}));
  holo->add_option("--x", hol.pair.x_path, "X matrix JSON file (custom)");
  holo->add_option("--y", hol.pair.y_path, "Y matrix JSON file (custom)");
  holo->add_option("--n", hol.pair.n, "generated surface: columns");
  holo->add_option("--m", hol.pair.m, "generated surface: rows");
  holo->add_option("--seed", hol.pair.seed, "RNG seed");
  holo->add_option("--steps", hol.steps, "RK4 steps per loop")->check(CLI::Range(100, 10000000));
  holo->add_option("--loops", hol.loops_path, "loop spec JSON file");
  holo->add_option("--output", hol.output, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  holo->add_option("--out", hol.out_path, "report path (stdout when absent)");

  PairArgs conv;
  CLI::App* cv =
      app.add_subcommand("convergence", "integrator order study on the reference rectangle");
  cv->add_option("--surface", conv.surface, "complex | custom")
      ->check(CLI::IsMember({"complex", "custom"}));
  cv->add_option("--x", conv.x_path, "X matrix JSON file (custom)");
  cv->add_option("--y", conv.y_path, "Y matrix JSON file (custom)");
  cv->add_option("--n", conv.n, "generated surface: columns");
  cv->add_option("--m", conv.m, "generated surface: rows");
  cv->add_option("--seed", conv.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    apply_tol_overrides(tol_overrides);
    if (app.got_subcommand("lemma-check")) {
      if (n < 1 || m < n) throw IoError("need 1 <= n <= m");
      return run_lemma_check(n, m, trials, seed);
    }
    if (app.got_subcommand("su2-check")) return run_su2_check(trials, seed);
    if (app.got_subcommand("classify")) return run_classify(pair);
    if (app.got_subcommand("holonomy")) return run_holonomy(hol);
    return run_convergence(conv);
  } catch (const IoError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
