#include "minkcurves/scene.hpp"

#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace minkcurves::scene {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw SchemaError(where + ": " + what); }

const json& require(const json& obj, const std::string& where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : obj.items())
    if (!ok.count(k)) fail(where, "unknown key \"" + k + "\"");
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where, "expected a finite number");
  return d;
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

double positive(const json& obj, const std::string& where, const char* key) {
  const double d = number(require(obj, where, key), where + "." + key);
  if (!(d > 0)) fail(where + "." + key, "must be positive");
  return d;
}

Jet2 parse_coefficients(const json& arr, int degree, const std::string& where) {
  if (!arr.is_array()) fail(where, "expected an array");
  Jet2 f(degree);
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    only_keys(arr[k], w, {"s", "i", "value"});
    const int s = integer(require(arr[k], w, "s"), w + ".s");
    const int i = integer(require(arr[k], w, "i"), w + ".i");
    if (s < 0 || s > degree || i < 0 || i > s) fail(w, "needs 0 <= i <= s <= degree");
    if (!seen.insert({s, i}).second) fail(w, "duplicate coefficient");
    f.set(s, i, number(require(arr[k], w, "value"), w + ".value"));
  }
  return f;
}

json emit_coefficients(const Jet2& f) {
  json arr = json::array();
  for (int s = 0; s <= f.degree(); ++s)
    for (int i = 0; i <= s; ++i)
      if (f.coeff(s, i) != 0.0) arr.push_back({{"s", s}, {"i", i}, {"value", f.coeff(s, i)}});
  return arr;
}

std::string convention_name(CrossConvention c) { return c == CrossConvention::Standard ? "standard" : "flipped"; }

bool same_jet(const Jet2& a, const Jet2& b) { return a.degree() == b.degree() && a.data() == b.data(); }

}  // namespace

CountMonitor parse_monitor(const std::string& name) {
  if (name == "umbilics") return CountMonitor::umbilics();
  const std::string comp = "components:";
  if (name.rfind(comp, 0) == 0) return CountMonitor::components(parse_feature_kind(name.substr(comp.size())));
  const auto x = name.find('x');
  if (x == std::string::npos) throw std::invalid_argument("unknown monitor: " + name);
  return CountMonitor::intersections(parse_feature_kind(name.substr(0, x)), parse_feature_kind(name.substr(x + 1)));
}

bool operator==(const Scene& a, const Scene& b) {
  if (a.version != b.version || a.name != b.name || a.patch.form() != b.patch.form() ||
      !same_jet(a.patch.f(), b.patch.f()) || a.convention != b.convention || a.grid != b.grid ||
      !(a.tolerances == b.tolerances) || !(a.output == b.output))
    return false;
  if (a.domain.xmin != b.domain.xmin || a.domain.xmax != b.domain.xmax || a.domain.ymin != b.domain.ymin ||
      a.domain.ymax != b.domain.ymax)
    return false;
  if (a.family.has_value() != b.family.has_value()) return false;
  if (!a.family) return true;
  const Family &fa = *a.family, &fb = *b.family;
  if (fa.t_min != fb.t_min || fa.t_max != fb.t_max || fa.samples != fb.samples || fa.monitors != fb.monitors ||
      fa.perturbation.size() != fb.perturbation.size())
    return false;
  for (std::size_t k = 0; k < fa.perturbation.size(); ++k)
    if (!same_jet(fa.perturbation[k], fb.perturbation[k])) return false;
  return true;
}

Scene parse_scene(const json& j) {
  only_keys(j, "scene", {"version", "name", "patch", "convention", "domain", "grid", "tolerances", "family", "output"});
  Scene s;
  s.version = integer(require(j, "scene", "version"), "version");
  if (s.version != kSchemaVersion)
    fail("version", "unsupported schema version " + std::to_string(s.version) + " (expected " +
                        std::to_string(kSchemaVersion) + ")");
  const json& name = require(j, "scene", "name");
  if (!name.is_string()) fail("name", "expected a string");
  s.name = name.get<std::string>();

  const json& conv = require(j, "scene", "convention");
  if (conv == "standard")
    s.convention = CrossConvention::Standard;
  else if (conv == "flipped")
    s.convention = CrossConvention::Flipped;
  else
    fail("convention", "expected \"standard\" or \"flipped\"");

  const json& tj = require(j, "scene", "tolerances");
  only_keys(tj, "tolerances",
            {"normalization", "membership", "validity_radius", "scenario_rel", "config_radius", "config_grid", "trace",
             "intersect", "contact_cap", "contact_rel", "sweep_resolution"});
  Tolerances& t = s.tolerances;
  t.normalization = positive(tj, "tolerances", "normalization");
  t.membership = positive(tj, "tolerances", "membership");
  t.validity_radius = positive(tj, "tolerances", "validity_radius");
  t.scenario_rel = positive(tj, "tolerances", "scenario_rel");
  t.config_radius = positive(tj, "tolerances", "config_radius");
  t.config_grid = integer(require(tj, "tolerances", "config_grid"), "tolerances.config_grid");
  if (t.config_grid < 16) fail("tolerances.config_grid", "must be at least 16");
  t.trace = positive(tj, "tolerances", "trace");
  t.intersect = positive(tj, "tolerances", "intersect");
  t.contact_cap = integer(require(tj, "tolerances", "contact_cap"), "tolerances.contact_cap");
  if (t.contact_cap < 1 || t.contact_cap > 16) fail("tolerances.contact_cap", "must be in [1, 16]");
  t.contact_rel = positive(tj, "tolerances", "contact_rel");
  t.sweep_resolution = positive(tj, "tolerances", "sweep_resolution");

  const json& pj = require(j, "scene", "patch");
  only_keys(pj, "patch", {"form", "degree", "coefficients"});
  const json& form = require(pj, "patch", "form");
  if (!form.is_string()) fail("patch.form", "expected a string");
  MongeForm mf;
  try {
    mf = parse_monge_form(form.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail("patch.form", e.what());
  }
  const int degree = integer(require(pj, "patch", "degree"), "patch.degree");
  if (degree < 2 || degree > 12) fail("patch.degree", "must be in [2, 12]");
  Jet2 f = parse_coefficients(require(pj, "patch", "coefficients"), degree, "patch.coefficients");
  try {
    s.patch = MongePatch::validated(mf, std::move(f), t.normalization);
  } catch (const std::invalid_argument& e) {
    fail("patch", e.what());
  }

  const json& dj = require(j, "scene", "domain");
  only_keys(dj, "domain", {"xmin", "xmax", "ymin", "ymax"});
  s.domain = Rect{number(require(dj, "domain", "xmin"), "domain.xmin"), number(require(dj, "domain", "xmax"), "domain.xmax"),
                  number(require(dj, "domain", "ymin"), "domain.ymin"), number(require(dj, "domain", "ymax"), "domain.ymax")};
  if (!(s.domain.xmin < s.domain.xmax) || !(s.domain.ymin < s.domain.ymax)) fail("domain", "needs xmin < xmax and ymin < ymax");

  s.grid = integer(require(j, "scene", "grid"), "grid");
  if (s.grid < 16 || s.grid > 4097) fail("grid", "must be in [16, 4097]");

  if (j.contains("family")) {
    const json& fj = j["family"];
    only_keys(fj, "family", {"perturbation", "t_min", "t_max", "samples", "monitors"});
    Family fam;
    const json& pert = require(fj, "family", "perturbation");
    if (!pert.is_array()) fail("family.perturbation", "expected an array");
    std::set<int> powers;
    for (std::size_t k = 0; k < pert.size(); ++k) {
      const std::string w = "family.perturbation[" + std::to_string(k) + "]";
      only_keys(pert[k], w, {"power", "coefficients"});
      const int power = integer(require(pert[k], w, "power"), w + ".power");
      // Powers start at 1 so the family reproduces the base patch at t = 0.
      if (power < 1 || power > 8) fail(w + ".power", "must be in [1, 8]");
      if (!powers.insert(power).second) fail(w + ".power", "duplicate power");
      if (static_cast<int>(fam.perturbation.size()) < power) fam.perturbation.resize(static_cast<std::size_t>(power), Jet2(degree));
      fam.perturbation[static_cast<std::size_t>(power - 1)] = parse_coefficients(require(pert[k], w, "coefficients"), degree, w + ".coefficients");
    }
    fam.t_min = number(require(fj, "family", "t_min"), "family.t_min");
    fam.t_max = number(require(fj, "family", "t_max"), "family.t_max");
    if (fam.t_min == fam.t_max) fail("family", "t_min and t_max must differ");
    fam.samples = integer(require(fj, "family", "samples"), "family.samples");
    if (fam.samples < 2 || fam.samples > 10001) fail("family.samples", "must be in [2, 10001]");
    if (fj.contains("monitors")) {
      const json& mj = fj["monitors"];
      if (!mj.is_array()) fail("family.monitors", "expected an array");
      for (const auto& m : mj) {
        if (!m.is_string()) fail("family.monitors", "expected strings");
        try {
          fam.monitors.push_back(parse_monitor(m.get<std::string>()).name());
        } catch (const std::invalid_argument& e) {
          fail("family.monitors", e.what());
        }
      }
    }
    s.family = std::move(fam);
  }

  const json& oj = require(j, "scene", "output");
  only_keys(oj, "output", {"formats", "colors"});
  const json& formats = require(oj, "output", "formats");
  if (!formats.is_array()) fail("output.formats", "expected an array");
  for (const auto& f : formats) {
    if (!f.is_string() || (f != "csv" && f != "svg" && f != "json")) fail("output.formats", "entries must be csv, svg or json");
    s.output.formats.push_back(f.get<std::string>());
  }
  if (oj.contains("colors")) {
    const json& cj = oj["colors"];
    if (!cj.is_object()) fail("output.colors", "expected an object");
    static const std::regex color_re("#[0-9a-fA-F]{6}|[a-z]{3,20}");
    for (const auto& [k, v] : cj.items()) {
      FeatureKind kind;
      try {
        kind = parse_feature_kind(k);
      } catch (const std::invalid_argument& e) {
        fail("output.colors", e.what());
      }
      if (!v.is_string() || !std::regex_match(v.get<std::string>(), color_re))
        fail("output.colors." + k, "expected #rrggbb or a lowercase color name");
      s.output.colors[kind] = v.get<std::string>();
    }
  }
  return s;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return parse_scene(j);
}

json to_json(const Scene& s) {
  json j;
  j["version"] = s.version;
  j["name"] = s.name;
  j["convention"] = convention_name(s.convention);
  j["patch"] = {{"form", to_string(s.patch.form())},
                {"degree", s.patch.degree()},
                {"coefficients", emit_coefficients(s.patch.f())}};
  j["domain"] = {{"xmin", s.domain.xmin}, {"xmax", s.domain.xmax}, {"ymin", s.domain.ymin}, {"ymax", s.domain.ymax}};
  j["grid"] = s.grid;
  const Tolerances& t = s.tolerances;
  j["tolerances"] = {{"normalization", t.normalization}, {"membership", t.membership},
                     {"validity_radius", t.validity_radius}, {"scenario_rel", t.scenario_rel},
                     {"config_radius", t.config_radius}, {"config_grid", t.config_grid},
                     {"trace", t.trace}, {"intersect", t.intersect},
                     {"contact_cap", t.contact_cap}, {"contact_rel", t.contact_rel},
                     {"sweep_resolution", t.sweep_resolution}};
  if (s.family) {
    json pert = json::array();
    for (std::size_t k = 0; k < s.family->perturbation.size(); ++k)
      pert.push_back({{"power", static_cast<int>(k + 1)}, {"coefficients", emit_coefficients(s.family->perturbation[k])}});
    j["family"] = {{"perturbation", pert},
                   {"t_min", s.family->t_min},
                   {"t_max", s.family->t_max},
                   {"samples", s.family->samples},
                   {"monitors", s.family->monitors}};
  }
  json colors = json::object();
  for (const auto& [k, v] : s.output.colors) colors[to_string(k)] = v;
  j["output"] = {{"formats", s.output.formats}, {"colors", colors}};
  return j;
}

FamilySpec family_spec(const Scene& s) {
  if (!s.family) throw SchemaError("family: scene has no family section");
  FamilySpec spec;
  spec.base = s.patch;
  spec.perturbation = s.family->perturbation;
  spec.t_min = s.family->t_min;
  spec.t_max = s.family->t_max;
  spec.samples = s.family->samples;
  spec.domain = s.domain;
  spec.grid = s.grid;
  return spec;
}

std::vector<CountMonitor> monitors(const Scene& s) {
  std::vector<CountMonitor> out;
  if (s.family)
    for (const auto& m : s.family->monitors) out.push_back(parse_monitor(m));
  return out;
}

}  // namespace minkcurves::scene
