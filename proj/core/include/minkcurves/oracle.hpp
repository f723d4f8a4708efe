#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "minkcurves/surface.hpp"
#include "minkcurves/tracer.hpp"

// Brute-force cross-checks. Nothing here goes through Jet2 arithmetic:
// surfaces are evaluated monomial by monomial and all derivatives of the
// feature fields are finite differences.
namespace minkcurves::oracle {

struct OracleReport {
  std::string quantity;
  double main_value = 0.0;
  double oracle_value = 0.0;
  double abs_discrepancy = 0.0;
  double rel_discrepancy = 0.0;

  static OracleReport make(std::string quantity, double main_value, double oracle_value);
};

using Evaluator = std::function<double(double, double)>;

class RawSurface {
 public:
  struct Term {
    int p = 0;  // power of the first chart variable
    int q = 0;  // power of the second
    double c = 0.0;
  };

  RawSurface(MongeForm form, std::vector<Term> terms, CrossConvention conv = CrossConvention::Standard);
  // Copies the coefficient values only.
  static RawSurface from_patch(const MongePatch& patch, CrossConvention conv = CrossConvention::Standard);

  // f and its partials up to order two: (f, fx, fy, fxx, fxy, fyy).
  std::array<double, 6> height(double x, double y) const;
  // (E, F, G, l, m, n) through the embedding.
  std::array<double, 6> forms(double x, double y) const;
  double field(FeatureKind kind, double x, double y) const;
  Evaluator evaluator(FeatureKind kind) const;

 private:
  MongeForm form_;
  std::vector<Term> terms_;
  CrossConvention conv_;
};

struct Derivatives {
  double value = 0.0;
  std::array<double, 2> gradient{};
  std::array<double, 3> hessian{};  // (f_xx, f_xy, f_yy)
};

// Central differences with one Richardson level. The gradient uses step h,
// the Hessian step h_hessian.
Derivatives fd_derivatives(const Evaluator& f, double x, double y, int order = 2, double h = 1e-5,
                           double h_hessian = 1e-3);

struct Census {
  // Connected sets of sign-changing cells (8-neighborhood).
  int components = 0;
  // Local minima of f^2 away from those cells whose refined |f| is below tol.
  int isolated = 0;
  std::vector<Point2> isolated_points;
};

Census grid_zero_census(const Evaluator& f, const Rect& domain, int n, double tol = 3e-10);

// Common zeros of two fields: isolated zeros of hypot(f/sf, g/sg) with
// each field scaled by its mean gradient norm over the domain.
Census intersection_census(const Evaluator& f, const Evaluator& g, const Rect& domain, int n, double tol = 1e-7);

// Slope of log|b| against log(distance to p) over [dmin, dmax] along the
// polyline, vertices first pulled onto {a = 0} with finite-difference
// Newton steps. Throws InsufficientPolylineResolution.
int numeric_contact(const TracedCurve& curve_a, const Evaluator& a, const Evaluator& b, Point2 p,
                    double dmin = 1e-4, double dmax = 1e-2, double* slope = nullptr);

}  // namespace minkcurves::oracle
