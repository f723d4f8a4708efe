#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "minkcurves/classifier.hpp"
#include "minkcurves/tracer.hpp"

namespace minkcurves {

// ---- swallowtail ----

enum class Stratum {
  Open0Roots,
  Open2Roots,
  Open4Roots,
  SheetNoExtraRoots,
  SheetTwoExtraRoots,
  CuspidalEdge,
  SelfIntersection,
  Origin
};

std::string to_string(Stratum s);
// Roman numeral where the identification is pinned (II, III, IV, VI); empty otherwise.
std::string numeral(Stratum s);

struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
};

struct SwallowtailPoint {
  double u = 0, v = 0, w = 0;
  Stratum stratum = Stratum::Open0Roots;
  std::vector<RealRoot> roots;  // ascending
  // False when a critical value sits within 1000x of the clustering
  // threshold, or the sign pattern is inconsistent.
  bool confident = true;
};

// Real-root pattern of y^4 + u y^2 + v y + w.
SwallowtailPoint swallowtail_stratum(double u, double v, double w, double cluster_tol = 1e-8);

// (u, -4 y^3 - 2 u y, 3 y^4 + u y^2)
std::array<double, 3> swallowtail_phi(double u, double y);

// Real roots and multiplicities of the polynomial sum c[k] y^k on [lo, hi].
// Multiple roots are detected as critical points with vanishing value.
std::vector<RealRoot> real_root_pattern(const std::vector<double>& ascending, double lo, double hi,
                                        double cluster_tol, bool* confident = nullptr);

// Stratum implied by a root pattern of a quartic-type function.
Stratum stratum_from_roots(const std::vector<RealRoot>& roots);

// ---- families ----

struct FamilySpec {
  MongePatch base;
  // perturbation[k] multiplies t^(k+1).
  std::vector<Jet2> perturbation;
  double t_min = -0.01;
  double t_max = 0.01;
  int samples = 41;
  Rect domain{-0.05, 0.05, -0.05, 0.05};
  int grid = 129;

  MongePatch patch_at(double t) const;
  // Sample k of `samples`, evaluated so that reversing the range gives the same values.
  double t_at(int k) const;
  // t-derivatives of the perturbation at the origin, at parameter t.
  FamilyDerivatives derivatives(double t = 0.0) const;
};

struct CountMonitor {
  enum class Type { Intersections, Components, Umbilics };
  Type type = Type::Intersections;
  FeatureKind a = FeatureKind::LD;
  FeatureKind b = FeatureKind::LD;

  std::string name() const;
  static CountMonitor intersections(FeatureKind a, FeatureKind b) { return {Type::Intersections, a, b}; }
  static CountMonitor components(FeatureKind a) { return {Type::Components, a, a}; }
  static CountMonitor umbilics() { return {Type::Umbilics, FeatureKind::LPL, FeatureKind::LPL}; }
};

// All six intersection pairs, four component counts and the umbilic count.
std::vector<CountMonitor> default_monitors();

enum class EventKind { IntersectionCount, SingularityCount, ComponentCount };
std::string to_string(EventKind k);

struct BifurcationEvent {
  double t = 0.0;  // bracket midpoint
  double t_lo = 0.0, t_hi = 0.0;
  EventKind kind = EventKind::IntersectionCount;
  std::string monitor;
  int before = 0;
  int after = 0;
  double width() const { return t_hi - t_lo; }
};

struct SweepSnapshot {
  double t = 0.0;
  std::map<std::string, int> counts;
  std::vector<TracedCurve> curves;
  std::vector<IntersectionPoint> intersections;
  std::vector<Point2> umbilics;
  std::vector<std::string> failures;
};

struct SweepOptions {
  std::vector<CountMonitor> monitors;  // empty: default_monitors()
  // Bracket width target, relative to the sweep range.
  double resolution = 1e-4;
  bool keep_curves = true;
};

struct SweepResult {
  std::vector<SweepSnapshot> snapshots;  // ascending t
  std::vector<BifurcationEvent> events;  // ascending t, then monitor name
  std::vector<std::string> log;
  bool all_brackets_closed = true;
};

SweepResult sweep(const FamilySpec& spec, const SweepOptions& opt = {});

// One monitored count at one parameter value.
int count_at(const FamilySpec& spec, double t, const CountMonitor& m);

// Zeros of the pair of curvature-line coefficients that stays independent
// at the base point (the third follows from the metric identity).
std::vector<Point2> umbilics_at(const MongePatch& patch, const Rect& domain, int grid);

struct UmbilicSet {
  double t = 0.0;
  std::vector<Point2> points;
};

std::vector<UmbilicSet> umbilic_tracker(const FamilySpec& spec);

// Fold predictor for umbilic pairs born at the base umbilic: for small
// t != 0 there are two umbilics when t * P < 0 and none when t * P > 0.
// Throws WrongScenario unless the base point is a degenerate umbilic
// (rank-one derivative of the coefficient pair).
double umbilic_birth_predictor(const FamilySpec& spec);

struct A3PathSample {
  double t = 0.0;
  std::array<double, 3> w{};
  // Root pattern of the normalized quartic model of the reduced function.
  SwallowtailPoint point;
  // Stratum of y^4 + w1 y^2 + w2 y + w3 after removing the cubic term.
  Stratum quartic_stratum = Stratum::Origin;
  double residual = 0.0;
};

struct A3Path {
  SingularityReport base;
  std::vector<A3PathSample> samples;  // ascending t
  // Central-difference derivative of w at t = 0.
  std::array<double, 3> tangent{};
};

struct A3PathOptions {
  int series_order = 10;
  double max_residual = 1e-2;
};

// The reduced function of each sample is brought to quartic form by
// substitutions y = Y + c Y^k, so w is exact through series_order.
// Throws WrongScenario unless the base field has an A3 point at the origin,
// FitResidualTooLarge when the quartic model fails to reproduce the
// reduced function.
A3Path a3_deformation_path(const FamilySpec& spec, FeatureKind field = FeatureKind::LPL,
                           const A3PathOptions& opt = {});

}  // namespace minkcurves
