#include <catch2/catch_amalgamated.hpp>

#include <grasshopf/io.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
  static const fs::path dir = [] {
    const fs::path d =
        fs::temp_directory_path() / ("ghf_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt", err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(GRASSHOPF_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = ghf::read_text_file(out.string());
  r.err = ghf::read_text_file(err.string());
  return r;
}

std::string rect_loops_file() {
  const fs::path p = work_dir() / "loops.json";
  ghf::LoopSpec a, b;
  a.p = 0.3;
  a.a = 0.7;
  a.b = 1.1;
  a.q = 0.4;
  b = a;
  b.orientation = -1;
  ghf::write_text_file(
      p.string(), ghf::json::array({ghf::loop_to_json(a), ghf::loop_to_json(b)}).dump());
  return p.string();
}

}  // namespace

TEST_CASE("check subcommands run clean on healthy inputs") {
  REQUIRE(run_cli("lemma-check --n 2 --m 3 --trials 50 --seed 7").code == 0);
  REQUIRE(run_cli("su2-check --trials 100 --seed 9").code == 0);
  const RunResult r = run_cli("classify --surface flat --n 1 --m 2 --seed 5");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("classification=Flat") != std::string::npos);
  REQUIRE(r.out.find("eta=") != std::string::npos);

  const RunResult cv = run_cli("convergence --n 1 --m 2 --seed 3");
  REQUIRE(cv.code == 0);
  REQUIRE(cv.out.rfind("steps,theta,abs_error\n", 0) == 0);
  REQUIRE(cv.out.find("observed_order=") != std::string::npos);
}

TEST_CASE("holonomy reports are deterministic and match the law") {
  const std::string loops = rect_loops_file();
  const fs::path r1 = work_dir() / "r1.json", r2 = work_dir() / "r2.json";
  REQUIRE(run_cli("holonomy --n 1 --m 1 --seed 42 --steps 4000 --loops " + loops +
                  " --out " + r1.string())
              .code == 0);
  REQUIRE(run_cli("holonomy --n 1 --m 1 --seed 42 --steps 4000 --loops " + loops +
                  " --out " + r2.string())
              .code == 0);
  REQUIRE(ghf::read_text_file(r1.string()) == ghf::read_text_file(r2.string()));

  const ghf::json doc = ghf::parse_json(ghf::read_text_file(r1.string()), "report");
  REQUIRE(doc.at("summary").at("ok").get<bool>());
  REQUIRE(doc.at("rows").size() == 2);
  REQUIRE(std::abs(doc.at("rows")[0].at("ratio").get<double>() - 0.5) < 1e-6);
  REQUIRE(std::abs(doc.at("rows")[1].at("ratio").get<double>() - 0.5) < 1e-6);
  // reversed orientation shows up as a negated area
  REQUIRE(doc.at("rows")[1].at("area").get<double>() < 0);
}

TEST_CASE("csv reports carry the pinned header") {
  const std::string loops = rect_loops_file();
  const RunResult r =
      run_cli("holonomy --n 1 --m 1 --steps 2000 --loops " + loops + " --output csv");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.rfind("loop,classification,lambda,mu_re,mu_im,area,theta,"
                      "half_area_minus_theta,scalar_residual,max_orth_drift,ratio,flat_gap\n",
                      0) == 0);
  REQUIRE(r.err.find("wall_seconds=") != std::string::npos);  // timing never enters the report
  REQUIRE(r.out.find("wall") == std::string::npos);
}

TEST_CASE("usage and input problems exit 2") {
  REQUIRE(run_cli("no-such-command").code == 2);
  REQUIRE(run_cli("holonomy --steps 10").code == 2);       // below the configured minimum
  REQUIRE(run_cli("holonomy --n 3 --m 2").code == 2);      // n > m
  REQUIRE(run_cli("lemma-check --tol nope=1").code == 2);  // unknown tolerance
  REQUIRE(run_cli("classify --surface custom --x /missing.json --y /missing.json").code == 2);
  REQUIRE(run_cli("convergence --surface flat --n 1 --m 2").code == 2);  // no phase to track

  const fs::path open_loop = work_dir() / "open.json";
  ghf::write_text_file(open_loop.string(),
                       R"({"kind":"chart","points":[[0.1,0],[0.5,0.2],[0.5,0.6],[0.2,0.9]]})");
  REQUIRE(run_cli("holonomy --n 1 --m 1 --loops " + open_loop.string()).code == 2);
}

TEST_CASE("tolerance violations exit 1") {
  REQUIRE(run_cli("lemma-check --trials 20 --tol lemma=1e-20").code == 1);
  REQUIRE(run_cli("holonomy --n 1 --m 1 --steps 1000 --tol law_complex=1e-20").code == 1);

  // conformality failure: X*X = diag(1, 4)
  const fs::path x = work_dir() / "x.json", y = work_dir() / "y.json";
  ghf::CMat X = ghf::CMat::Zero(3, 2), Y = ghf::CMat::Zero(3, 2);
  X(0, 0) = 1;
  X(1, 1) = 2;
  Y(2, 0) = 1;
  ghf::save_cmat(x.string(), X);
  ghf::save_cmat(y.string(), Y);
  const RunResult r =
      run_cli("classify --surface custom --x " + x.string() + " --y " + y.string());
  REQUIRE(r.code == 1);
  REQUIRE(r.out.find("StarViolation") != std::string::npos);
}

TEST_CASE("surfaces without charts are rejected by holonomy but classified") {
  const fs::path x = work_dir() / "ntg_x.json", y = work_dir() / "ntg_y.json";
  ghf::CMat X = ghf::CMat::Zero(3, 2), Y = ghf::CMat::Zero(3, 2);
  X(0, 0) = 1;
  X(1, 1) = 1;
  Y(2, 0) = 1;
  ghf::save_cmat(x.string(), X);
  ghf::save_cmat(y.string(), Y);
  const std::string files = " --x " + x.string() + " --y " + y.string();
  const RunResult c = run_cli("classify --surface custom" + files);
  REQUIRE(c.code == 0);
  REQUIRE(c.out.find("NotTotallyGeodesic") != std::string::npos);
  REQUIRE(run_cli("holonomy --surface custom" + files).code == 2);
  REQUIRE(run_cli("convergence --surface custom" + files).code == 2);
}

TEST_CASE("flat runs gate on the identity law") {
  const std::string loops = rect_loops_file();
  const RunResult r =
      run_cli("holonomy --surface flat --n 1 --m 2 --steps 2000 --loops " + loops);
  REQUIRE(r.code == 0);
  const ghf::json doc = ghf::parse_json(r.out, "report");
  REQUIRE(doc.at("summary").at("law").get<std::string>() == "V = I");
  REQUIRE(doc.at("summary").at("max_gap").get<double>() < 1e-7);
}
