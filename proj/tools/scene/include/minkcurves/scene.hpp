#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "minkcurves/bifurcation.hpp"
#include "minkcurves/surface.hpp"

namespace minkcurves::scene {

inline constexpr int kSchemaVersion = 1;

// Malformed or invalid scene content. The message names the offending key.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every tolerance that can change a classification. All are required in
// a scene file and echoed in each report.
struct Tolerances {
  double normalization = 1e-12;
  double membership = 1e-8;
  double validity_radius = 0.5;
  double scenario_rel = 1e-9;
  double config_radius = 0.05;
  int config_grid = 161;
  double trace = 1e-10;
  double intersect = 1e-10;
  int contact_cap = 8;
  double contact_rel = 1e-9;
  double sweep_resolution = 1e-4;

  bool operator==(const Tolerances&) const = default;
};

struct Family {
  // perturbation[k] multiplies t^(k+1).
  std::vector<Jet2> perturbation;
  double t_min = -0.01;
  double t_max = 0.01;
  int samples = 41;
  // Monitor names as produced by CountMonitor::name(); empty means all.
  std::vector<std::string> monitors;
};

struct Output {
  std::vector<std::string> formats;  // subset of csv, svg, json
  std::map<FeatureKind, std::string> colors;

  bool operator==(const Output&) const = default;
};

struct Scene {
  int version = kSchemaVersion;
  std::string name;
  MongePatch patch;
  CrossConvention convention = CrossConvention::Standard;
  Rect domain;
  int grid = 129;
  Tolerances tolerances;
  std::optional<Family> family;
  Output output;
};

bool operator==(const Scene& a, const Scene& b);

Scene parse_scene(const nlohmann::json& j);
// Throws SchemaError for unreadable files and invalid JSON as well.
Scene load_scene(const std::string& path);
nlohmann::json to_json(const Scene& s);

// Throws SchemaError without a family section.
FamilySpec family_spec(const Scene& s);
std::vector<CountMonitor> monitors(const Scene& s);
CountMonitor parse_monitor(const std::string& name);

}  // namespace minkcurves::scene
