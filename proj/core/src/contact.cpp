#include "minkcurves/contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minkcurves/errors.hpp"

namespace minkcurves {

std::string to_string(ContactMethod m) { return m == ContactMethod::JetSeries ? "jet-series" : "numeric-slope"; }

ContactResult contact_order(const Jet2& a, const Jet2& b, Point2 p, const ContactOptions& opt) {
  Jet2 A = recenter(a, p.x, p.y);
  const Jet2 B = recenter(b, p.x, p.y);
  const double ax = A.xy(1, 0), ay = A.xy(0, 1);
  if (std::hypot(ax, ay) <= 1e-10 * std::max(1.0, A.max_abs()))
    throw SingularBaseCurve("contact_order: base curve is singular at the point");
  A.set(0, 0, 0.0);
  const Var solved = std::abs(ay) >= std::abs(ax) ? Var::Y : Var::X;
  const Series g = ift_series(A, solved, opt.cap);
  const Series s = restrict_to_graph(B, solved, g, opt.cap);

  double scale = 1.0;
  for (int d = 1; d <= std::min(opt.cap, B.degree()); ++d)
    for (int i = 0; i <= d; ++i) scale = std::max(scale, std::abs(B.coeff(d, i)));
  const double thr = opt.rel_tol * scale;
  // Rounding floor per order: the same restriction with all terms made
  // positive bounds the magnitudes that cancel into s[j].
  Jet2 absB(B.degree());
  for (int d = 0; d <= B.degree(); ++d)
    for (int i = 0; i <= d; ++i) absB.set(d, i, std::abs(B.coeff(d, i)));
  Series absg = g;
  for (double& c : absg) c = std::abs(c);
  const Series bound = restrict_to_graph(absB, solved, absg, opt.cap);
  constexpr double kRoundingFactor = 1e3 * std::numeric_limits<double>::epsilon();

  ContactResult r;
  r.point = p;
  r.method = ContactMethod::JetSeries;
  for (int j = 0; j <= opt.cap; ++j) {
    if (std::abs(s[j]) > std::max(thr, kRoundingFactor * bound[j])) {
      r.order = j;
      r.leading_coefficient = s[j];
      return r;
    }
  }
  r.order = opt.cap;
  r.capped = true;
  return r;
}

ContactResult contact_order(const FeatureField& a, const FeatureField& b, Point2 p, const ContactOptions& opt) {
  ContactResult r = contact_order(a.jet(), b.jet(), p, opt);
  r.a = a.kind();
  r.b = b.kind();
  return r;
}

ContactResult contact_order_numeric(const TracedCurve& curve_a, const FeatureField& a, const FeatureField& b,
                                    Point2 p, double dmin, double dmax) {
  std::vector<double> lx, ly;
  for (const auto& pl : curve_a.polylines)
    for (const auto& v : pl.vertices) {
      double x = v.x, y = v.y;
      for (int it = 0; it < 4; ++it) {
        const double val = a(x, y);
        const auto g = a.gradient(x, y);
        const double n2 = g[0] * g[0] + g[1] * g[1];
        if (n2 == 0.0) break;
        x -= val * g[0] / n2;
        y -= val * g[1] / n2;
      }
      const double d = std::hypot(x - p.x, y - p.y);
      if (d < dmin || d > dmax) continue;
      const double bv = std::abs(b(x, y));
      if (bv < 1e-13 * std::max(1.0, b.jet().max_abs())) continue;
      lx.push_back(std::log(d));
      ly.push_back(std::log(bv));
    }
  if (lx.size() < 6) throw InsufficientPolylineResolution("contact_order_numeric: too few vertices in range");
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  ContactResult r;
  r.point = p;
  r.a = a.kind();
  r.b = b.kind();
  r.method = ContactMethod::NumericSlope;
  r.order = static_cast<int>(std::lround(slope));
  r.leading_coefficient = slope;
  return r;
}

}  // namespace minkcurves
