#pragma once

#include <array>
#include <memory>
#include <string>

#include "minkcurves/jet.hpp"
#include "minkcurves/minkowski.hpp"

namespace minkcurves {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Rect {
  double xmin = -0.25;
  double xmax = 0.25;
  double ymin = -0.25;
  double ymax = 0.25;

  bool contains(const Point2& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

// TimelikeGraph: (x, f(x,z), z) with j^1 f = 0.
// LightconeGraph: (x, y, f(x,y)) with j^1 f = x.
enum class MongeForm { TimelikeGraph, LightconeGraph };

std::string to_string(MongeForm f);
MongeForm parse_monge_form(const std::string& s);

class MongePatch {
 public:
  MongePatch() : MongePatch(MongeForm::TimelikeGraph, Jet2(2)) {}
  // No normalization check; used for family members away from t = 0.
  MongePatch(MongeForm form, Jet2 f);

  // Throws std::invalid_argument unless the jet has the form's normalized 1-jet.
  static MongePatch validated(MongeForm form, Jet2 f, double tol = 1e-12);

  MongeForm form() const { return form_; }
  const Jet2& f() const { return f_; }
  int degree() const { return f_.degree(); }
  double a(int s, int i) const { return f_.coeff(s, i); }
  bool normalized(double tol = 1e-12) const;

  // Embedding components as jets in the chart variables.
  std::array<Jet2, 3> embedding() const;

 private:
  MongeForm form_;
  Jet2 f_;
};

struct FormBundle {
  Jet2 E, F, G;
  Jet2 l, m, n;
};

// All six jets are kept at their exact polynomial degree.
FormBundle fundamental_forms(const MongePatch& patch, CrossConvention conv = CrossConvention::Standard);

enum class FeatureKind { LD, LPL, PC, MCNC };

inline constexpr std::array<FeatureKind, 4> kAllFeatures = {FeatureKind::LD, FeatureKind::LPL,
                                                            FeatureKind::PC, FeatureKind::MCNC};

std::string to_string(FeatureKind k);
FeatureKind parse_feature_kind(const std::string& s);

// First and second fundamental coefficients at one point.
struct PointForms {
  double E = 0, F = 0, G = 0;
  double l = 0, m = 0, n = 0;
};

struct BdeTriple {
  double A = 0;  // G m - F n
  double B = 0;  // G l - E n
  double C = 0;  // F l - E m
};

BdeTriple bde_from_forms(const PointForms& pf);
double field_value(FeatureKind kind, const PointForms& pf);

// Pointwise route through the embedding: derivatives of f at (x, y), then
// the frame quantities. Shares nothing with the product jets.
PointForms forms_at(const MongePatch& patch, double x, double y,
                    CrossConvention conv = CrossConvention::Standard);

class FeatureField {
 public:
  FeatureField() = default;
  FeatureField(FeatureKind kind, Jet2 jet);
  FeatureField(FeatureKind kind, Jet2 jet, std::shared_ptr<const MongePatch> source, CrossConvention conv);

  FeatureKind kind() const { return kind_; }
  const Jet2& jet() const { return jet_; }
  bool has_source() const { return static_cast<bool>(source_); }

  double operator()(double x, double y) const { return jet_(x, y); }
  double operator()(const Point2& p) const { return jet_(p.x, p.y); }
  std::array<double, 2> gradient(double x, double y) const;
  // (f_xx, f_xy, f_yy)
  std::array<double, 3> hessian(double x, double y) const;
  // Evaluation through the embedding; the jet when no patch is attached.
  double direct(double x, double y) const;

 private:
  FeatureKind kind_ = FeatureKind::LD;
  Jet2 jet_, dx_, dy_, dxx_, dxy_, dyy_;
  std::shared_ptr<const MongePatch> source_;
  CrossConvention conv_ = CrossConvention::Standard;
};

struct FeatureSet {
  std::array<FeatureField, 4> fields;
  const FeatureField& operator[](FeatureKind k) const { return fields[static_cast<int>(k)]; }
};

Jet2 feature_jet(const FormBundle& b, FeatureKind kind);
FeatureSet feature_fields(const FormBundle& bundle);
FeatureSet feature_fields(const MongePatch& patch, CrossConvention conv = CrossConvention::Standard);

BdeTriple bde_coefficients(const FormBundle& bundle, double x, double y);
// Jets of (A, B, C).
std::array<Jet2, 3> bde_jets(const FormBundle& bundle);

// Re-expresses the surface about q in TimelikeGraph form (Lorentzian q) or
// LightconeGraph form (q on the degenerate locus), truncated at `degree`.
// Throws FrameDegeneracy at Riemannian points.
MongePatch monge_taylor(const MongePatch& patch, double qx, double qy, int degree);

}  // namespace minkcurves
