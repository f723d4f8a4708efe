#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minkcurves/contact.hpp"
#include "minkcurves/surface.hpp"

namespace minkcurves {

enum class Region { Riemannian, Lorentzian, OnLD };
enum class UmbilicType { None, Spacelike, Timelike, Lightlike, FlatTimelike };

std::string to_string(Region r);
std::string to_string(UmbilicType u);

struct PointClass {
  Region region = Region::Lorentzian;
  bool on_lpl = false;
  bool on_pc = false;
  bool on_mcnc = false;
  UmbilicType umbilic = UmbilicType::None;
  // Raw values at the point, for reporting.
  double delta = 0, delta_tilde = 0, K = 0, H = 0;

  bool member(FeatureKind k) const;
};

// Membership when |field(q)| < tol * max(1, |grad field(q)|).
// Throws OutsideValidity when q lies outside the square of half-width
// validity_radius around the chart origin.
PointClass classify_point(const MongePatch& patch, Point2 q, double tol = 1e-8, double validity_radius = 0.5,
                          CrossConvention conv = CrossConvention::Standard);

enum class SingularityLabel { Regular, A1Plus, A1Minus, A3Plus, A3Minus, DegenerateUnresolved };
std::string to_string(SingularityLabel l);

struct SingularityReport {
  FeatureKind kind = FeatureKind::LD;
  Point2 point;
  SingularityLabel label = SingularityLabel::Regular;
  std::array<double, 2> gradient{};
  std::array<double, 3> hessian{};  // (f_xx, f_xy, f_yy)
  double hessian_det = 0.0;
  std::array<double, 2> eigenvalues{};  // ascending
  // Kernel direction scaled so its larger component is 1 (rank-1 case).
  std::array<double, 2> kernel{};
  // Reduced form c2 X^2 + c3 Y^3 + c4 Y^4 along the kernel parameter.
  double square_coefficient = 0.0;
  double cubic_coefficient = 0.0;
  double quartic_coefficient = 0.0;

  // Quartic coefficient rescaled to a kernel vector with unit y-component.
  double quartic_per_unit_y() const;
};

SingularityReport classify_singularity(const FeatureField& field, Point2 q);
SingularityReport classify_singularity(const Jet2& jet, Point2 q, FeatureKind kind = FeatureKind::LD);

// Values indexed 1..14; nullopt where not applicable to the chart or
// scenario data. Auxiliary entries keyed by name (k20, c1, x_K2, ...).
struct LambdaVector {
  std::array<std::optional<double>, 15> values{};
  std::map<std::string, double> aux;

  std::optional<double> operator[](int i) const { return values.at(static_cast<std::size_t>(i)); }
  void set(int i, double v) { values.at(static_cast<std::size_t>(i)) = v; }
  std::map<std::string, double> named() const;
};

// First-order t-derivatives of the perturbation at the origin; used by
// the family-dependent invariants.
struct FamilyDerivatives {
  double h_xt = 0, h_yt = 0;
  double h_xxt = 0, h_xyt = 0, h_yyt = 0;
  double t = 0;
};

// Closed forms from the patch coefficients. Timelike charts yield
// 1, 3-8, 10, 11; lightcone charts yield 12-14. Family-dependent entries
// (8, 14) need `family`. Throws InsufficientDegree when the patch is too
// short for a requested formula (degree 3 for the cubic ones, 4 for 10-12).
LambdaVector lambda_invariants(const MongePatch& patch, const std::optional<FamilyDerivatives>& family = {});

// Coefficient bundles in the null chart (F, l, m, n as jets in (u, v)).
struct NullChartJets {
  Jet2 F, l, m, n;
};

double lambda2_null(const NullChartJets& nc);
// l and n are the second fundamental coefficients in the null chart.
double lambda9_null(const Jet2& l, const Jet2& n);
// Numerators of the third and fourth coefficients of the solved {l = 0}
// graph u = g(v), as closed forms in the l-coefficients.
double lpl_graph_c3(const Jet2& l);
double lpl_graph_c4(const Jet2& l);

enum class Scenario {
  Generic,
  LplPcMcncTangency,
  FlatTimelikeUmbilic,
  LplNonMorse,
  McncMorseSing,
  PcMorseSing,
  LdLplHighTangency,
  LdPcTangency,
  LightlikeUmbilic,
  Ambiguous
};
std::string to_string(Scenario s);

struct ScenarioOptions {
  // Discriminating quantities below rel_tol * scale^degree count as zero.
  double rel_tol = 1e-9;
  // Local box used to trace curves for the configuration index.
  double config_radius = 0.05;
  int config_grid = 161;
  CrossConvention conv = CrossConvention::Standard;
};

struct ScenarioReport {
  Scenario scenario = Scenario::Generic;
  // Every scenario whose defining conditions held within tolerance.
  std::vector<Scenario> candidates;
  // Secondary genericity conditions that failed, as "name=value".
  std::vector<std::string> notes;
  PointClass origin;
  LambdaVector lambdas;
  std::vector<SingularityReport> singularities;
  std::vector<ContactResult> contacts;
  // 0 when the scenario has no enumerated configurations.
  int configuration = 0;
  // Same index predicted from the closed-form signs.
  int predicted_configuration = 0;
  std::map<std::string, double> tolerances;

  bool ambiguous() const { return scenario == Scenario::Ambiguous; }
};

// The patch must be centered at the candidate point.
ScenarioReport detect_scenario(const MongePatch& patch, const ScenarioOptions& opt = {});

struct FlatUmbilicGeometry {
  // Tangent lines c_i x + d_i z = 0: two LPL branches, then the MCNC.
  std::array<double, 3> c{}, d{};
  // Closed-form coefficients of F(x,z) = k20 x^2 + k21 x z + k22 z^2.
  double k20 = 0, k21 = 0, k22 = 0;
  // The same coefficients read off the 2-jet of the PC field, negated.
  double k20_jet = 0, k21_jet = 0, k22_jet = 0;
  double lambda6 = 0, lambda7 = 0;
  // F at v1 = (d1, -c1)/2, v2 = (d2, -c2)/2 and v3 = (d3, -c3); G is the
  // product of the LPL tangent lines (c1 x + d1 z)(c2 x + d2 z).
  double F_v1 = 0, F_v2 = 0, F_v3 = 0, G_v3 = 0;
};

// Throws WrongScenario unless the patch is a TimelikeGraph with vanishing 2-jet.
FlatUmbilicGeometry flat_umbilic_geometry(const MongePatch& patch, CrossConvention conv = CrossConvention::Standard);

struct LightlikeUmbilicGeometry {
  // Common tangent line a x + b y = 0 of PC and MCNC.
  double line_a = 0, line_b = 0;
  // Graph curvatures of PC and MCNC in the coordinate xi = a x + b y,
  // scaled so the LPL branches sit at +-sqrt(Q).
  double x_K2 = 0, x_H2 = 0;
  // Q = 32 L13^3 / (27 a30^3); negative Q means the LPL is an isolated point.
  double Q = 0;
  // Raw graph coefficients xi = c y^2 + ...
  double c_pc = 0, c_mcnc = 0, lpl_mid = 0, lpl_half_sq = 0;
  bool lpl_has_branches = false;
  // Observed arrangement (meaningful when lpl_has_branches).
  bool pc_outside_branches = false;
  bool mcnc_between_branches = false;
  bool pc_mcnc_same_side = false;
  // |x_K2| > |x_H2|.
  bool pc_farther_than_mcnc = false;
  // Closed-form predictors.
  bool predicted_pc_outside = false;    // 3 a30 a32 - a31^2 != 0
  bool predicted_mcnc_between = false;  // (3 a30 a32 - a31^2) / a30 > 0
  // (3 a30 a32 - a31^2)(18 a22^2 a30 + L13); positive exactly when
  // |x_K2| > |x_H2|.
  double order_product = 0.0;
};

// Throws WrongScenario unless the patch is a LightconeGraph with a20 = a21 = 0.
LightlikeUmbilicGeometry lightlike_umbilic_geometry(const MongePatch& patch,
                                                   CrossConvention conv = CrossConvention::Standard);

}  // namespace minkcurves
