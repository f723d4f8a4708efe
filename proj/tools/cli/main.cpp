// minkcurves: scene files in, reports and plots out.
//
// Exit codes: 0 ok, 2 schema or usage error, 3 ambiguous scenario (the
// report is still written), 4 an event bracket failed to close, 1 other
// failures.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minkcurves/errors.hpp"
#include "minkcurves/report.hpp"
#include "minkcurves/scene.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace minkcurves;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kSchema = 2;
constexpr int kAmbiguous = 3;
constexpr int kUnclosed = 4;

struct Common {
  std::string out;
  int grid = 0;
  std::vector<std::string> formats;
};

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

scene::Scene load(const std::string& path, const Common& c) {
  scene::Scene s = scene::load_scene(path);
  if (c.grid > 0) {
    if (c.grid < 16) throw scene::SchemaError("--grid: must be at least 16");
    s.grid = c.grid;
  }
  if (!c.formats.empty()) s.output.formats = c.formats;
  return s;
}

bool wants(const scene::Scene& s, const char* fmt) {
  return std::find(s.output.formats.begin(), s.output.formats.end(), fmt) != s.output.formats.end();
}

// Writes into --out when given, otherwise prints JSON or CSV to stdout.
void emit(const Common& c, const std::string& file, const std::string& content) {
  if (c.out.empty()) {
    std::cout << content;
    return;
  }
  fs::create_directories(c.out);
  write_file(fs::path(c.out) / file, content);
}

int cmd_analyze(const std::string& path, const Common& c) {
  scene::Scene s = load(path, c);
  if (s.output.formats.empty()) s.output.formats = {"json"};
  const scene::AnalyzeResult r = scene::analyze(s);
  if (wants(s, "json")) emit(c, "analyze.json", dump(r.report));
  if (wants(s, "csv")) emit(c, "analyze.csv", scene::flatten_csv(r.report));
  return r.ambiguous ? kAmbiguous : kOk;
}

int cmd_trace(const std::string& path, const Common& c) {
  scene::Scene s = load(path, c);
  if (s.output.formats.empty()) s.output.formats = {"csv", "svg"};
  const auto curves = scene::trace_all(s);
  const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  fs::create_directories(dir);
  for (const auto& curve : curves) {
    const std::string name = to_string(curve.kind);
    if (wants(s, "csv")) write_file(dir / (name + ".csv"), polylines_csv(curve));
    if (wants(s, "svg")) write_file(dir / (name + ".svg"), curves_svg({curve}, s.domain, s.name + "  " + name, scene::svg_style(s)));
  }
  if (wants(s, "svg")) write_file(dir / "curves.svg", curves_svg(curves, s.domain, s.name, scene::svg_style(s)));
  if (wants(s, "json")) write_file(dir / "trace.json", dump(scene::traces_json(s, curves)));
  return kOk;
}

int cmd_sweep(const std::string& path, const Common& c) {
  scene::Scene s = load(path, c);
  if (!s.family) throw scene::SchemaError("family: sweep needs a family section");
  if (s.output.formats.empty()) s.output.formats = {"json", "csv"};
  const SweepResult r = scene::run_sweep(s);
  const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  fs::create_directories(dir);
  if (wants(s, "json")) write_file(dir / "events.json", dump(scene::sweep_json(s, r)));
  if (wants(s, "csv")) write_file(dir / "counts.csv", scene::sweep_counts_csv(r));
  if (wants(s, "svg")) {
    fs::create_directories(dir / "frames");
    for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%04zu.svg", k);
      write_file(dir / "frames" / name, scene::sweep_frame_svg(s, r, k));
    }
  }
  if (!r.all_brackets_closed) {
    std::cerr << "minkcurves: an event bracket did not close\n";
    return kUnclosed;
  }
  return kOk;
}

std::vector<std::array<double, 3>> read_points(const json& j) {
  std::vector<std::array<double, 3>> pts;
  if (!j.contains("points") || !j["points"].is_array()) throw scene::SchemaError("path: expected \"points\" or a scene");
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number())
      throw scene::SchemaError("path.points: entries must be [u, v, w]");
    pts.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }
  return pts;
}

int cmd_strata(const std::vector<double>& uvw, const std::string& path_file, const Common& c) {
  std::vector<std::string> formats = c.formats.empty() ? std::vector<std::string>{"json"} : c.formats;
  auto emit_report = [&](const json& report) {
    for (const auto& f : formats) {
      if (f == "json") emit(c, "strata.json", dump(report));
      if (f == "csv") emit(c, "strata.csv", scene::flatten_csv(report));
    }
  };
  if (path_file.empty()) {
    if (uvw.size() != 3) throw scene::SchemaError("strata: expected u v w or --path");
    json report = scene::stratum_json(swallowtail_stratum(uvw[0], uvw[1], uvw[2]));
    report["schema_version"] = scene::kSchemaVersion;
    report["command"] = "strata";
    emit_report(report);
    return kOk;
  }
  std::ifstream in(path_file);
  if (!in) throw scene::SchemaError(path_file + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw scene::SchemaError(path_file + ": " + e.what());
  }
  if (j.contains("patch")) {
    scene::Scene s = scene::parse_scene(j);
    if (c.grid > 0) s.grid = c.grid;
    emit_report(scene::a3_path_json(a3_deformation_path(scene::family_spec(s))));
    return kOk;
  }
  json samples = json::array();
  for (const auto& p : read_points(j)) samples.push_back(scene::stratum_json(swallowtail_stratum(p[0], p[1], p[2])));
  emit_report({{"schema_version", scene::kSchemaVersion}, {"command", "strata"}, {"samples", samples}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curves on surfaces in Minkowski 3-space: analysis, tracing and family sweeps"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output directory");
    sub->add_option("--grid", common.grid, "Override the scene grid size");
    sub->add_option("--format", common.formats, "Output formats")->check(CLI::IsMember({"csv", "svg", "json"}));
  };

  std::string scene_path;
  CLI::App* analyze = app.add_subcommand("analyze", "Classify the chart origin and report invariants and contacts");
  analyze->add_option("scene", scene_path, "Scene file")->required();
  add_common(analyze);
  CLI::App* tracec = app.add_subcommand("trace", "Trace LD, LPL, PC and MCNC");
  tracec->add_option("scene", scene_path, "Scene file")->required();
  add_common(tracec);
  CLI::App* sweepc = app.add_subcommand("sweep", "Sweep the scene's family and localize count changes");
  sweepc->add_option("scene", scene_path, "Scene file")->required();
  add_common(sweepc);
  std::vector<double> uvw;
  std::string path_file;
  CLI::App* strata = app.add_subcommand("strata", "Swallowtail stratum of (u, v, w) or of a path");
  strata->add_option("uvw", uvw, "u v w")->expected(0, 3);
  strata->add_option("--path", path_file, "JSON file with \"points\", or a scene whose base has an A3 LPL point");
  add_common(strata);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kSchema;
  }

  try {
    if (*analyze) return cmd_analyze(scene_path, common);
    if (*tracec) return cmd_trace(scene_path, common);
    if (*sweepc) return cmd_sweep(scene_path, common);
    if (*strata) return cmd_strata(uvw, path_file, common);
  } catch (const scene::SchemaError& e) {
    std::cerr << "minkcurves: schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    std::cerr << "minkcurves: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
