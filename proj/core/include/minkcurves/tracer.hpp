#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "minkcurves/surface.hpp"

namespace minkcurves {

struct CurveVertex {
  double x = 0.0;
  double y = 0.0;
  double residual = 0.0;
};

struct Polyline {
  std::vector<CurveVertex> vertices;
  bool closed = false;
};

struct TracedCurve {
  FeatureKind kind = FeatureKind::LD;
  std::vector<Polyline> polylines;
  // Zeros with no sign change around them (A1+ points).
  std::vector<CurveVertex> isolated;
  int grid = 0;
  Rect domain;

  std::size_t vertex_count() const;
  // Polylines plus isolated zeros.
  int component_count() const { return static_cast<int>(polylines.size() + isolated.size()); }
};

struct TraceOptions {
  double tolerance = 1e-10;
  int max_bisection = 60;
  bool find_isolated = true;
};

// Marching squares on an n x n node grid; n >= 16.
TracedCurve trace(const FeatureField& field, const Rect& domain, int n, const TraceOptions& opt = {});

struct IntersectionPoint {
  Point2 position;
  FeatureKind a = FeatureKind::LD;
  FeatureKind b = FeatureKind::LD;
  double residual_a = 0.0;
  double residual_b = 0.0;
  double sin_angle = 0.0;
  bool transversal = false;
};

struct IntersectOptions {
  double tolerance = 1e-10;
  double merge_distance = 1e-6;
  double transversal_threshold = 1e-5;
  int max_newton = 100;
};

// Diagnostics receives one line per dropped Newton seed when non-null.
std::vector<IntersectionPoint> intersect(const FeatureField& a, const FeatureField& b, const Rect& domain,
                                         int n, std::vector<std::string>* diagnostics = nullptr,
                                         const IntersectOptions& opt = {});

// Isolated zeros of a field (local minima of |f| with no sign change nearby,
// refined by Newton on the gradient).
std::vector<CurveVertex> isolated_zeros(const FeatureField& field, const Rect& domain, int n,
                                        double tolerance = 1e-10);

std::string polylines_csv(const TracedCurve& curve);

struct SvgStyle {
  double size_px = 600.0;
  double stroke = 1.5;
  // Replaces feature_color for the listed kinds.
  std::map<FeatureKind, std::string> colors;
};

std::string feature_color(FeatureKind k);
std::string curves_svg(const std::vector<TracedCurve>& curves, const Rect& domain, const std::string& caption,
                       const SvgStyle& style = {});

// Parallel loop over [0, n); each index handled by exactly one worker.
// Runs serially below min_items or when already inside a worker. The first
// exception thrown by a worker is rethrown after all workers join.
void parallel_for(int n, const std::function<void(int)>& body, int min_items = 64);

}  // namespace minkcurves
