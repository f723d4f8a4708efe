#pragma once

#include <string>

#include "minkcurves/surface.hpp"
#include "minkcurves/tracer.hpp"

namespace minkcurves {

enum class ContactMethod { JetSeries, NumericSlope };

std::string to_string(ContactMethod m);

struct ContactResult {
  Point2 point;
  FeatureKind a = FeatureKind::LD;
  FeatureKind b = FeatureKind::LD;
  int order = 0;
  // True when every coefficient through the cap vanished ("order >= cap").
  bool capped = false;
  ContactMethod method = ContactMethod::JetSeries;
  double leading_coefficient = 0.0;
};

struct ContactOptions {
  int cap = 8;
  // Series coefficients below rel_tol * scale count as zero.
  double rel_tol = 1e-9;
};

// Vanishing order of b along the regular curve {a = 0} through p.
// Throws SingularBaseCurve if the gradient of a vanishes at p.
ContactResult contact_order(const FeatureField& a, const FeatureField& b, Point2 p, const ContactOptions& opt = {});
ContactResult contact_order(const Jet2& a, const Jet2& b, Point2 p, const ContactOptions& opt = {});

// Fallback: slope of log|b| against log(distance to p) along a traced
// polyline of a, vertices first pulled back onto {a = 0}.
// Throws InsufficientPolylineResolution with fewer than six usable vertices.
ContactResult contact_order_numeric(const TracedCurve& curve_a, const FeatureField& a, const FeatureField& b,
                                    Point2 p, double dmin = 1e-4, double dmax = 1e-2);

}  // namespace minkcurves
