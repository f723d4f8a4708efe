#include "minkcurves/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "minkcurves/classifier.hpp"
#include "minkcurves/contact.hpp"
#include "minkcurves/errors.hpp"

namespace minkcurves::scene {

using nlohmann::json;

namespace {

// Exact polynomial, padded so every closed form that needs quartic terms applies.
MongePatch analysis_patch(const Scene& s) {
  return MongePatch(s.patch.form(), s.patch.f().with_degree(std::max(4, s.patch.degree())));
}

json tolerances_json(const Tolerances& t) {
  return {{"normalization", t.normalization}, {"membership", t.membership},   {"validity_radius", t.validity_radius},
          {"scenario_rel", t.scenario_rel},   {"config_radius", t.config_radius}, {"config_grid", t.config_grid},
          {"trace", t.trace},                 {"intersect", t.intersect},     {"contact_cap", t.contact_cap},
          {"contact_rel", t.contact_rel},     {"sweep_resolution", t.sweep_resolution}};
}

json point_json(const PointClass& p) {
  return {{"region", to_string(p.region)}, {"on_LPL", p.on_lpl}, {"on_PC", p.on_pc},
          {"on_MCNC", p.on_mcnc},         {"umbilic", to_string(p.umbilic)},
          {"delta", p.delta},             {"delta_tilde", p.delta_tilde},
          {"K", p.K},                     {"H", p.H}};
}

json singularity_json(const SingularityReport& r) {
  json j = {{"kind", to_string(r.kind)},
            {"x", r.point.x},
            {"y", r.point.y},
            {"label", to_string(r.label)},
            {"gradient", r.gradient},
            {"hessian", r.hessian},
            {"hessian_det", r.hessian_det}};
  if (r.label == SingularityLabel::A3Plus || r.label == SingularityLabel::A3Minus) {
    j["kernel"] = r.kernel;
    j["square_coefficient"] = r.square_coefficient;
    j["quartic_per_unit_y"] = r.quartic_per_unit_y();
  }
  return j;
}

json contact_json(const ContactResult& c) {
  return {{"a", to_string(c.a)},     {"b", to_string(c.b)},          {"x", c.point.x},
          {"y", c.point.y},          {"order", c.order},             {"capped", c.capped},
          {"method", to_string(c.method)}, {"leading_coefficient", c.leading_coefficient}};
}

json lambdas_json(const LambdaVector& L) {
  json j = json::object();
  for (int i = 1; i <= 14; ++i) j["L" + std::to_string(i)] = L[i] ? json(*L[i]) : json(nullptr);
  return j;
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), os);
  } else {
    os << prefix << "," << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

AnalyzeResult analyze(const Scene& s) {
  const MongePatch patch = analysis_patch(s);
  const Tolerances& t = s.tolerances;
  AnalyzeResult out;
  json& r = out.report;
  r["schema_version"] = kSchemaVersion;
  r["command"] = "analyze";
  r["scene"] = s.name;
  r["tolerances"] = tolerances_json(t);

  r["point"] = point_json(classify_point(patch, Point2{}, t.membership, t.validity_radius, s.convention));

  ScenarioOptions so;
  so.rel_tol = t.scenario_rel;
  so.config_radius = t.config_radius;
  so.config_grid = t.config_grid;
  so.conv = s.convention;
  const ScenarioReport sc = detect_scenario(patch, so);
  out.ambiguous = sc.ambiguous();
  json candidates = json::array();
  for (auto c : sc.candidates) candidates.push_back(to_string(c));
  r["scenario"] = {{"name", to_string(sc.scenario)},
                   {"candidates", candidates},
                   {"notes", sc.notes},
                   {"configuration", sc.configuration},
                   {"predicted_configuration", sc.predicted_configuration},
                   {"tolerances", sc.tolerances}};
  json sing = json::array();
  for (const auto& x : sc.singularities) sing.push_back(singularity_json(x));
  r["singularities"] = sing;
  json contacts = json::array();
  for (const auto& c : sc.contacts) contacts.push_back(contact_json(c));
  r["contacts_at_origin"] = contacts;

  const LambdaVector L = s.family ? lambda_invariants(patch, family_spec(s).derivatives()) : sc.lambdas;
  r["lambdas"] = lambdas_json(L);
  r["lambda_aux"] = L.aux;

  const FeatureSet fs = feature_fields(patch, s.convention);
  TraceOptions topt;
  topt.tolerance = t.trace;
  json curves = json::object();
  for (FeatureKind k : kAllFeatures) {
    const TracedCurve c = trace(fs[k], s.domain, s.grid, topt);
    curves[to_string(k)] = {{"polylines", c.polylines.size()}, {"isolated", c.isolated.size()}};
  }
  r["curves"] = curves;

  IntersectOptions iopt;
  iopt.tolerance = t.intersect;
  ContactOptions copt;
  copt.cap = t.contact_cap;
  copt.rel_tol = t.contact_rel;
  json inter = json::array();
  for (std::size_t i = 0; i < kAllFeatures.size(); ++i)
    for (std::size_t k = i + 1; k < kAllFeatures.size(); ++k) {
      const FeatureKind a = kAllFeatures[i], b = kAllFeatures[k];
      for (const auto& p : intersect(fs[a], fs[b], s.domain, s.grid, nullptr, iopt)) {
        json e = {{"a", to_string(a)},          {"b", to_string(b)},
                  {"x", p.position.x},          {"y", p.position.y},
                  {"transversal", p.transversal}, {"sin_angle", p.sin_angle}};
        try {
          e["contact"] = contact_json(contact_order(fs[a], fs[b], p.position, copt));
        } catch (const SingularBaseCurve&) {
          try {
            e["contact"] = contact_json(contact_order(fs[b], fs[a], p.position, copt));
          } catch (const SingularBaseCurve&) {
            e["contact"] = {{"error", "both curves singular at the point"}};
          }
        }
        inter.push_back(e);
      }
    }
  r["intersections"] = inter;
  return out;
}

std::string flatten_csv(const json& report) {
  std::ostringstream os;
  os << "key,value\n";
  flatten(report, "", os);
  return os.str();
}

std::vector<TracedCurve> trace_all(const Scene& s) {
  const FeatureSet fs = feature_fields(s.patch, s.convention);
  TraceOptions topt;
  topt.tolerance = s.tolerances.trace;
  std::vector<TracedCurve> out;
  for (FeatureKind k : kAllFeatures) out.push_back(trace(fs[k], s.domain, s.grid, topt));
  return out;
}

json traces_json(const Scene& s, const std::vector<TracedCurve>& curves) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "trace";
  j["scene"] = s.name;
  j["grid"] = s.grid;
  j["tolerances"] = tolerances_json(s.tolerances);
  json cj = json::object();
  for (const auto& c : curves) {
    json pls = json::array();
    for (const auto& pl : c.polylines) {
      json pts = json::array();
      for (const auto& v : pl.vertices) pts.push_back({v.x, v.y});
      pls.push_back({{"closed", pl.closed}, {"points", pts}});
    }
    json iso = json::array();
    for (const auto& v : c.isolated) iso.push_back({v.x, v.y});
    cj[to_string(c.kind)] = {{"polylines", pls}, {"isolated", iso}};
  }
  j["curves"] = cj;
  return j;
}

SvgStyle svg_style(const Scene& s) {
  SvgStyle st;
  st.colors = s.output.colors;
  return st;
}

SweepResult run_sweep(const Scene& s) {
  SweepOptions o;
  o.monitors = monitors(s);
  o.resolution = s.tolerances.sweep_resolution;
  o.keep_curves = std::find(s.output.formats.begin(), s.output.formats.end(), "svg") != s.output.formats.end();
  return sweep(family_spec(s), o);
}

json sweep_json(const Scene& s, const SweepResult& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "sweep";
  j["scene"] = s.name;
  j["tolerances"] = tolerances_json(s.tolerances);
  j["all_brackets_closed"] = r.all_brackets_closed;
  json ev = json::array();
  for (const auto& e : r.events)
    ev.push_back({{"t", e.t},
                  {"t_lo", e.t_lo},
                  {"t_hi", e.t_hi},
                  {"kind", to_string(e.kind)},
                  {"monitor", e.monitor},
                  {"before", e.before},
                  {"after", e.after}});
  j["events"] = ev;
  json snaps = json::array();
  for (const auto& sn : r.snapshots) snaps.push_back({{"t", sn.t}, {"counts", sn.counts}, {"failures", sn.failures}});
  j["snapshots"] = snaps;
  j["log"] = r.log;
  return j;
}

std::string sweep_counts_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "t";
  if (r.snapshots.empty()) return "t\n";
  for (const auto& [name, v] : r.snapshots.front().counts) os << "," << name;
  os << "\n";
  char buf[64];
  for (const auto& sn : r.snapshots) {
    std::snprintf(buf, sizeof buf, "%.12g", sn.t);
    os << buf;
    for (const auto& [name, v] : sn.counts) os << "," << v;
    os << "\n";
  }
  return os.str();
}

std::string sweep_frame_svg(const Scene& s, const SweepResult& r, std::size_t k) {
  const SweepSnapshot& sn = r.snapshots.at(k);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s  t = %.6g", s.name.c_str(), sn.t);
  std::string caption = buf;
  const double lo = k == 0 ? sn.t : r.snapshots[k - 1].t;
  for (const auto& e : r.events) {
    if (!(e.t > lo && e.t <= sn.t) && !(k == 0 && e.t == sn.t)) continue;
    std::snprintf(buf, sizeof buf, " | %s %d->%d at t=%.3g", e.monitor.c_str(), e.before, e.after, e.t);
    caption += buf;
  }
  return curves_svg(sn.curves, s.domain, caption, svg_style(s));
}

json stratum_json(const SwallowtailPoint& p) {
  json roots = json::array();
  for (const auto& rt : p.roots) roots.push_back({{"value", rt.value}, {"multiplicity", rt.multiplicity}});
  return {{"u", p.u},
          {"v", p.v},
          {"w", p.w},
          {"stratum", to_string(p.stratum)},
          {"numeral", numeral(p.stratum)},
          {"roots", roots},
          {"confident", p.confident}};
}

json a3_path_json(const A3Path& path) {
  json samples = json::array();
  for (const auto& smp : path.samples) {
    json pj = stratum_json(smp.point);
    pj["t"] = smp.t;
    pj["w"] = smp.w;
    pj["residual"] = smp.residual;
    samples.push_back(pj);
  }
  return {{"schema_version", kSchemaVersion},
          {"command", "strata"},
          {"base", singularity_json(path.base)},
          {"tangent", path.tangent},
          {"samples", samples}};
}

}  // namespace minkcurves::scene
