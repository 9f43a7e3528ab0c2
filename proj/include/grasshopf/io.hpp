#pragma once

#include <grasshopf/cmat.hpp>
#include <grasshopf/holonomy.hpp>
#include <grasshopf/surfaces.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ghf {

using json = nlohmann::ordered_json;

struct IoError : Error {
  using Error::Error;
};

/// %.17g: enough significant digits to round-trip a double through text
inline std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << text;
}

inline json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw IoError("malformed JSON in " + what);
  return j;
}

// ---- loop specs ------------------------------------------------------------

inline json loop_to_json(const LoopSpec& loop) {
  json j;
  if (loop.kind == LoopSpec::Kind::Rectangle) {
    j["kind"] = "rectangle";
    j["p"] = loop.p;
    j["a"] = loop.a;
    j["b"] = loop.b;
    j["q"] = loop.q;
  } else {
    j["kind"] = "chart";
    j["points"] = json::array();
    for (const auto& pt : loop.points) j["points"].push_back({pt.x(), pt.y()});
  }
  j["orientation"] = loop.orientation;
  j["samples"] = loop.samples;
  return j;
}

inline LoopSpec loop_from_json(const json& j) {
  LoopSpec loop;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rectangle") {
      loop.kind = LoopSpec::Kind::Rectangle;
      loop.p = j.at("p").get<double>();
      loop.a = j.at("a").get<double>();
      loop.b = j.at("b").get<double>();
      loop.q = j.at("q").get<double>();
    } else if (kind == "chart") {
      loop.kind = LoopSpec::Kind::Chart;
      for (const auto& pt : j.at("points")) {
        if (!pt.is_array() || pt.size() != 2) throw IoError("chart points must be [x, y] pairs");
        loop.points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
      }
    } else {
      throw IoError("unknown loop kind '" + kind + "'");
    }
    loop.orientation = j.value("orientation", 1);
    loop.samples = j.value("samples", std::size_t(10000));
  } catch (const json::exception& e) {
    throw IoError(std::string("bad loop spec: ") + e.what());
  }
  validate_loop(loop);
  return loop;
}

/// file holding one loop object or an array of them
inline std::vector<LoopSpec> load_loops(const std::string& path) {
  const json j = parse_json(read_text_file(path), path);
  std::vector<LoopSpec> loops;
  if (j.is_array())
    for (const auto& item : j) loops.push_back(loop_from_json(item));
  else
    loops.push_back(loop_from_json(j));
  if (loops.empty()) throw IoError("no loops in " + path);
  return loops;
}

// ---- matrices --------------------------------------------------------------

/// {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major
inline json cmat_to_json(const CMat& M) {
  json j;
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  j["entries"] = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r)
    for (Eigen::Index c = 0; c < M.cols(); ++c)
      j["entries"].push_back({M(r, c).real(), M(r, c).imag()});
  return j;
}

inline CMat cmat_from_json(const json& j) {
  try {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (rows <= 0 || cols <= 0) throw IoError("matrix dimensions must be positive");
    if (Eigen::Index(entries.size()) != rows * cols)
      throw IoError("matrix entry count does not match rows*cols");
    CMat M(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c, ++k) {
        const auto& e = entries[k];
        if (!e.is_array() || e.size() != 2) throw IoError("matrix entries must be [re, im] pairs");
        M(r, c) = cxd(e[0].get<double>(), e[1].get<double>());
      }
    require_finite(M, "matrix file");
    return M;
  } catch (const json::exception& e) {
    throw IoError(std::string("bad matrix file: ") + e.what());
  }
}

inline CMat load_cmat(const std::string& path) {
  return cmat_from_json(parse_json(read_text_file(path), path));
}

inline void save_cmat(const std::string& path, const CMat& M) {
  write_text_file(path, cmat_to_json(M).dump(2) + "\n");
}

// ---- lift trace ------------------------------------------------------------

/// columns: t, vec(F) column-major as re/im pairs, orthonormality residual,
/// horizontality residual (0 where no interior triple exists)
inline std::string lift_trace_csv(const BasePath& path, const LiftResult& lift) {
  const HorizontalityScan scan = horizontality_scan(path, lift);
  const Eigen::Index rows = lift.F.front().rows(), cols = lift.F.front().cols();
  std::string out = "t";
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const std::string tag = std::to_string(r) + "_" + std::to_string(c);
      out += ",re_" + tag + ",im_" + tag;
    }
  out += ",orth_resid,horiz_resid\n";
  const CMat In = CMat::Identity(cols, cols);
  for (std::size_t i = 0; i < lift.F.size(); ++i) {
    out += num17(lift.t[i]);
    for (Eigen::Index c = 0; c < cols; ++c)
      for (Eigen::Index r = 0; r < rows; ++r) {
        out += "," + num17(lift.F[i](r, c).real());
        out += "," + num17(lift.F[i](r, c).imag());
      }
    out += "," + num17((lift.F[i].adjoint() * lift.F[i] - In).norm());
    out += "," + num17(scan.residual[i]) + "\n";
  }
  return out;
}

// ---- experiment reports ----------------------------------------------------

struct ReportRow {
  std::string loop_id;
  std::string classification;
  double lambda = 0.0;
  cxd mu{0.0, 0.0};
  double area = 0.0;
  double theta = 0.0;
  double half_area_minus_theta = 0.0;  ///< wrapped into (-pi, pi]
  double scalar_residual = 0.0;
  double max_orth_drift = 0.0;
  std::optional<double> ratio;  ///< theta / area, absent when area ~ 0
  double flat_gap = 0.0;        ///< ||V - I||
};

inline ReportRow make_report_row(const std::string& id, const SurfaceSpec& spec,
                                 const ChartLoopRun& run) {
  ReportRow row;
  row.loop_id = id;
  row.classification = to_string(spec.tag);
  row.lambda = spec.lambda;
  row.mu = spec.mu;
  row.area = run.hol.area;
  row.theta = run.hol.theta;
  row.half_area_minus_theta = wrap_angle(0.5 * run.hol.area - run.hol.theta);
  row.scalar_residual = run.hol.scalar_residual;
  row.max_orth_drift = run.lift.max_orth_drift;
  row.ratio = run.hol.ratio;
  row.flat_gap = (run.hol.V - CMat::Identity(run.hol.V.rows(), run.hol.V.cols())).norm();
  return row;
}

inline json report_row_to_json(const ReportRow& row) {
  json j;
  j["loop"] = row.loop_id;
  j["classification"] = row.classification;
  j["lambda"] = row.lambda;
  j["mu"] = {row.mu.real(), row.mu.imag()};
  j["area"] = row.area;
  j["theta"] = row.theta;
  j["half_area_minus_theta"] = row.half_area_minus_theta;
  j["scalar_residual"] = row.scalar_residual;
  j["max_orth_drift"] = row.max_orth_drift;
  if (row.ratio)
    j["ratio"] = *row.ratio;
  else
    j["ratio"] = nullptr;
  j["flat_gap"] = row.flat_gap;
  return j;
}

inline std::string report_to_csv(const std::vector<ReportRow>& rows) {
  std::string out =
      "loop,classification,lambda,mu_re,mu_im,area,theta,half_area_minus_theta,"
      "scalar_residual,max_orth_drift,ratio,flat_gap\n";
  for (const ReportRow& r : rows) {
    out += r.loop_id + "," + r.classification + "," + num17(r.lambda) + "," +
           num17(r.mu.real()) + "," + num17(r.mu.imag()) + "," + num17(r.area) + "," +
           num17(r.theta) + "," + num17(r.half_area_minus_theta) + "," +
           num17(r.scalar_residual) + "," + num17(r.max_orth_drift) + ",";
    if (r.ratio) out += num17(*r.ratio);
    out += "," + num17(r.flat_gap) + "\n";
  }
  return out;
}

}  // namespace ghf
