#pragma once

#include <string>
#include <vector>

#include "minkcurves/bifurcation.hpp"
#include "minkcurves/scene.hpp"

namespace minkcurves::scene {

struct AnalyzeResult {
  nlohmann::json report;
  bool ambiguous = false;
};

// Point class and scenario at the chart origin, invariants, and contact
// orders at every pairwise intersection of the four curves in the domain.
AnalyzeResult analyze(const Scene& s);

// One "key,value" row per scalar leaf of a JSON report, keys joined with '.'.
std::string flatten_csv(const nlohmann::json& report);

std::vector<TracedCurve> trace_all(const Scene& s);
nlohmann::json traces_json(const Scene& s, const std::vector<TracedCurve>& curves);
SvgStyle svg_style(const Scene& s);

SweepResult run_sweep(const Scene& s);
nlohmann::json sweep_json(const Scene& s, const SweepResult& r);
// Header "t,<monitor>..." and one row per snapshot.
std::string sweep_counts_csv(const SweepResult& r);
// Frame k with its t value and the events bracketed since frame k-1.
std::string sweep_frame_svg(const Scene& s, const SweepResult& r, std::size_t k);

nlohmann::json stratum_json(const SwallowtailPoint& p);
nlohmann::json a3_path_json(const A3Path& path);

}  // namespace minkcurves::scene
