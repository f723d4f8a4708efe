#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>

#include "minkcurves/tracer.hpp"
#include "test_support.hpp"

using namespace minkcurves;
using mctest::jet_xy;

namespace {

FeatureField field_of(Jet2 j) { return FeatureField(FeatureKind::LD, std::move(j)); }

double min_distance_to_curve(const TracedCurve& c, Point2 p) {
  double best = INFINITY;
  for (const auto& pl : c.polylines) {
    const auto& vs = pl.vertices;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      best = std::min(best, std::hypot(vs[k].x - p.x, vs[k].y - p.y));
      if (k + 1 < vs.size()) {
        const double ax = vs[k].x, ay = vs[k].y, bx = vs[k + 1].x, by = vs[k + 1].y;
        const double dx = bx - ax, dy = by - ay, L2 = dx * dx + dy * dy;
        if (L2 > 0) {
          const double t = std::clamp(((p.x - ax) * dx + (p.y - ay) * dy) / L2, 0.0, 1.0);
          best = std::min(best, std::hypot(ax + t * dx - p.x, ay + t * dy - p.y));
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST(Tracer, DefiniteFieldIsEmpty) {
  const TracedCurve c = trace(field_of(jet_xy(2, {{0, 0, 1}, {2, 0, 1}, {0, 2, 1}})), Rect{-1, 1, -1, 1}, 64);
  EXPECT_TRUE(c.polylines.empty());
  EXPECT_TRUE(c.isolated.empty());
}

TEST(Tracer, CrossingDiagonals) {
  const TracedCurve c = trace(field_of(jet_xy(2, {{2, 0, 1}, {0, 2, -1}})), Rect{-1, 1, -1, 1}, 64);
  ASSERT_FALSE(c.polylines.empty());
  for (const auto& pl : c.polylines)
    for (const auto& v : pl.vertices) {
      EXPECT_LT(std::abs(v.residual), 1e-10);
      EXPECT_NEAR(std::abs(v.x), std::abs(v.y), 1e-9);
    }
  // Both diagonals are covered end to end.
  for (const Point2 p : {Point2{0.9, 0.9}, Point2{-0.9, 0.9}, Point2{0.9, -0.9}, Point2{-0.9, -0.9}})
    EXPECT_LT(min_distance_to_curve(c, p), 0.05);
}

TEST(Tracer, VerticesAreWithinTwoCells) {
  std::mt19937_64 rng(3);
  const Jet2 j = mctest::random_jet(rng, 3);
  const Rect dom{-1, 1, -1, 1};
  const TracedCurve c = trace(field_of(j), dom, 65);
  const double cell = dom.width() / 64;
  for (const auto& pl : c.polylines)
    for (std::size_t k = 0; k + 1 < pl.vertices.size(); ++k)
      EXPECT_LT(std::hypot(pl.vertices[k + 1].x - pl.vertices[k].x, pl.vertices[k + 1].y - pl.vertices[k].y),
                2 * std::sqrt(2.0) * cell);
}

TEST(Tracer, LightconeLdTouchesOrigin) {
  // delta = 4x + 4x^2 + 4y^2: a circle tangent to the y-axis at the origin.
  const MongePatch p(MongeForm::LightconeGraph, jet_xy(2, {{1, 0, 1}, {2, 0, 1}, {0, 2, 1}}));
  const TracedCurve c = trace(feature_fields(p)[FeatureKind::LD], Rect{}, 257);
  ASSERT_FALSE(c.polylines.empty());
  EXPECT_LT(min_distance_to_curve(c, {0, 0}), 1e-6);
}

TEST(Tracer, IsolatedZeroOfDefiniteQuadratic) {
  const TracedCurve c = trace(field_of(jet_xy(2, {{2, 0, 1}, {0, 2, 2}})), Rect{-0.3, 0.2, -0.25, 0.35}, 41);
  EXPECT_TRUE(c.polylines.empty());
  ASSERT_EQ(c.isolated.size(), 1u);
  EXPECT_NEAR(c.isolated[0].x, 0.0, 1e-6);
  EXPECT_NEAR(c.isolated[0].y, 0.0, 1e-6);
}

TEST(Tracer, NearbyDistinctIntersectionsStaySeparate) {
  // y = 0 against y = x^2 - 1e-6: roots at x = +-1e-3.
  const auto pts = intersect(field_of(jet_xy(2, {{0, 1, 1}})),
                             field_of(jet_xy(2, {{0, 1, 1}, {2, 0, -1}, {0, 0, 1e-6}})), Rect{}, 64);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_NEAR(pts[0].position.x, -1e-3, 1e-9);
  EXPECT_NEAR(pts[1].position.x, 1e-3, 1e-9);
}

TEST(Tracer, TransversalIntersection) {
  const auto pts = intersect(field_of(jet_xy(1, {{1, 0, 1}})), field_of(jet_xy(1, {{0, 1, 1}})), Rect{}, 64);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_NEAR(pts[0].position.x, 0.0, 1e-12);
  EXPECT_NEAR(pts[0].position.y, 0.0, 1e-12);
  EXPECT_TRUE(pts[0].transversal);
}

TEST(Tracer, TangentialIntersection) {
  const auto pts = intersect(field_of(jet_xy(2, {{0, 1, 1}})), field_of(jet_xy(2, {{0, 1, 1}, {2, 0, -1}})),
                             Rect{}, 64);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_NEAR(pts[0].position.x, 0.0, 1e-5);
  EXPECT_NEAR(pts[0].position.y, 0.0, 1e-10);
  EXPECT_FALSE(pts[0].transversal);
}

TEST(Tracer, IntersectionsLieOnBothCurves) {
  std::mt19937_64 rng(5);
  const Rect dom{-1, 1, -1, 1};
  const int n = 97;
  const double diag = std::sqrt(2.0) * dom.width() / (n - 1);
  for (int trial = 0; trial < 10; ++trial) {
    const FeatureField a = field_of(mctest::random_jet(rng, 3)), b = field_of(mctest::random_jet(rng, 3));
    const TracedCurve ca = trace(a, dom, n), cb = trace(b, dom, n);
    for (const auto& ip : intersect(a, b, dom, n)) {
      EXPECT_LT(std::abs(a(ip.position)), 1e-10);
      EXPECT_LT(std::abs(b(ip.position)), 1e-10);
      EXPECT_LT(min_distance_to_curve(ca, ip.position), diag);
      EXPECT_LT(min_distance_to_curve(cb, ip.position), diag);
    }
  }
}

TEST(Tracer, RefinementKeepsWellConditionedCurves) {
  std::mt19937_64 rng(7);
  const Rect dom{-1, 1, -1, 1};
  for (int trial = 0; trial < 10; ++trial) {
    const FeatureField f = field_of(mctest::random_jet(rng, 3));
    const TracedCurve coarse = trace(f, dom, 65), fine = trace(f, dom, 129);
    for (const auto& pl : coarse.polylines) {
      double min_grad = INFINITY;
      for (const auto& v : pl.vertices) {
        const auto g = f.gradient(v.x, v.y);
        min_grad = std::min(min_grad, std::hypot(g[0], g[1]));
      }
      if (min_grad < 0.1) continue;
      for (const auto& v : pl.vertices) EXPECT_LT(min_distance_to_curve(fine, {v.x, v.y}), 2 * dom.width() / 64);
    }
  }
}

TEST(Tracer, CsvHasOneRowPerVertex) {
  const TracedCurve c = trace(field_of(jet_xy(1, {{1, 0, 1}})), Rect{-1, 1, -1, 1}, 17);
  const std::string csv = polylines_csv(c);
  EXPECT_EQ(csv.rfind("curve_id,x,y,residual\n", 0), 0u);
  const auto rows = std::count(csv.begin(), csv.end(), '\n');
  EXPECT_EQ(static_cast<std::size_t>(rows), 1 + c.vertex_count());
}

TEST(Tracer, SvgColorsAndEscaping) {
  EXPECT_EQ(feature_color(FeatureKind::LD), "black");
  EXPECT_EQ(feature_color(FeatureKind::LPL), "red");
  EXPECT_EQ(feature_color(FeatureKind::PC), "blue");
  EXPECT_EQ(feature_color(FeatureKind::MCNC), "green");
  TracedCurve c = trace(FeatureField(FeatureKind::PC, jet_xy(1, {{1, 0, 1}})), Rect{-1, 1, -1, 1}, 17);
  const std::string svg = curves_svg({c}, Rect{-1, 1, -1, 1}, "t < 0 & \"x\"");
  EXPECT_NE(svg.find("stroke=\"blue\""), std::string::npos);
  EXPECT_NE(svg.find("t &lt; 0 &amp; &quot;x&quot;"), std::string::npos);
}

TEST(Tracer, ParallelForCoversEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, [&](int i) { hits[static_cast<std::size_t>(i)]++; }, 1);
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Tracer, ParallelForPropagatesExceptions) {
  EXPECT_THROW(parallel_for(
                   100, [](int i) {
                     if (i == 37) throw std::runtime_error("boom");
                   },
                   1),
               std::runtime_error);
}
