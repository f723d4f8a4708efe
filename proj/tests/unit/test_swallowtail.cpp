#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "minkcurves/bifurcation.hpp"
#include "minkcurves/jet.hpp"
#include "test_support.hpp"

using namespace minkcurves;
using mctest::uniform;

TEST(Swallowtail, CuspidalEdgeCurve) {
  const SwallowtailPoint p = swallowtail_stratum(-6, 8, -3);
  EXPECT_EQ(p.stratum, Stratum::CuspidalEdge);
  EXPECT_EQ(numeral(p.stratum), "III");
  ASSERT_EQ(p.roots.size(), 2u);
  EXPECT_NEAR(p.roots[0].value, -3.0, 1e-9);
  EXPECT_EQ(p.roots[0].multiplicity, 1);
  EXPECT_NEAR(p.roots[1].value, 1.0, 1e-5);
  EXPECT_EQ(p.roots[1].multiplicity, 3);
}

TEST(Swallowtail, SelfIntersectionCurve) {
  const SwallowtailPoint p = swallowtail_stratum(-2, 0, 1);
  EXPECT_EQ(p.stratum, Stratum::SelfIntersection);
  EXPECT_EQ(numeral(p.stratum), "IV");
  ASSERT_EQ(p.roots.size(), 2u);
  EXPECT_NEAR(p.roots[0].value, -1.0, 1e-6);
  EXPECT_NEAR(p.roots[1].value, 1.0, 1e-6);
  EXPECT_EQ(p.roots[0].multiplicity, 2);
  EXPECT_EQ(p.roots[1].multiplicity, 2);
}

TEST(Swallowtail, StrataAlongTheDefiningCurves) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = mctest::away_from_zero(rng, 0.2, 1.5);
    const double t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
    EXPECT_EQ(swallowtail_stratum(-6 * t2, 8 * t3, -3 * t4).stratum, Stratum::CuspidalEdge) << t;
    EXPECT_EQ(swallowtail_stratum(-2 * t2, 0, t4).stratum, Stratum::SelfIntersection) << t;
  }
}

TEST(Swallowtail, OpenRegions) {
  EXPECT_EQ(swallowtail_stratum(0, 0, 1).stratum, Stratum::Open0Roots);
  EXPECT_EQ(swallowtail_stratum(0, 0, -1).stratum, Stratum::Open2Roots);
  // y^4 - 2y^2 + 1/2: y^2 = 1 +- sqrt(1/2).
  const SwallowtailPoint four = swallowtail_stratum(-2, 0, 0.5);
  EXPECT_EQ(four.stratum, Stratum::Open4Roots);
  EXPECT_EQ(four.roots.size(), 4u);
  EXPECT_EQ(to_string(Stratum::Open0Roots), "open-0-roots");
  EXPECT_EQ(numeral(Stratum::Open0Roots), "");
}

TEST(Swallowtail, OriginAndSheets) {
  EXPECT_EQ(swallowtail_stratum(0, 0, 0).stratum, Stratum::Origin);
  // u > 0: a double root and no other real root.
  const auto a = swallowtail_phi(0.5, 0.3);
  EXPECT_EQ(swallowtail_stratum(a[0], a[1], a[2]).stratum, Stratum::SheetNoExtraRoots);
  EXPECT_EQ(numeral(Stratum::SheetNoExtraRoots), "II");
  // u < 0 and y small: a double root plus two simple ones.
  const auto b = swallowtail_phi(-0.5, 0.1);
  EXPECT_EQ(swallowtail_stratum(b[0], b[1], b[2]).stratum, Stratum::SheetTwoExtraRoots);
  EXPECT_EQ(numeral(Stratum::SheetTwoExtraRoots), "VI");
}

TEST(Swallowtail, PhiExamples) {
  const auto p = swallowtail_phi(-2, 1);
  EXPECT_EQ(p[0], -2.0);
  EXPECT_EQ(p[1], 0.0);
  EXPECT_EQ(p[2], 1.0);
  const auto q = swallowtail_phi(0.7, 0);
  EXPECT_EQ(q[0], 0.7);
  EXPECT_EQ(q[1], 0.0);
  EXPECT_EQ(q[2], 0.0);
}

TEST(Swallowtail, ResultantVanishesOnParametrization) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = swallowtail_phi(uniform(rng, -1, 1), uniform(rng, -1, 1));
    const auto r = resultant_quartic_cubic(p[0], p[1], p[2]);
    EXPECT_LT(std::abs(r.closed_form), 1e-9);
    EXPECT_LT(std::abs(r.sylvester), 1e-9);
  }
}

TEST(Swallowtail, ResultantVanishesAlongSmoothPaths) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const double c1 = uniform(rng, -1, 1), c2 = uniform(rng, -1, 1), c3 = uniform(rng, -1, 1);
    for (int k = -50; k <= 50; ++k) {
      const double u = k / 50.0;
      const double y = (c1 * u + c2 * std::sin(3 * u) + c3 * u * u * u) / 3;
      const auto p = swallowtail_phi(u, y);
      EXPECT_LT(std::abs(resultant_quartic_cubic(p[0], p[1], p[2]).closed_form), 1e-9);
    }
  }
}

TEST(Swallowtail, RegularSurfaceCurvesCrossBetweenSheetTypes) {
  // Curves t -> phi(u(t), y(t)) with u'(0) != 0 are regular at the origin.
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const double u1 = mctest::away_from_zero(rng, 0.3, 1.0), u2 = uniform(rng, -1, 1);
    const double y1 = uniform(rng, -1, 1), y2 = uniform(rng, -1, 1);
    std::vector<Stratum> seen;
    for (double t : {-0.02, -0.01, 0.0, 0.01, 0.02}) {
      const auto p = swallowtail_phi(u1 * t + u2 * t * t, y1 * t + y2 * t * t);
      const Stratum s = swallowtail_stratum(p[0], p[1], p[2]).stratum;
      if (seen.empty() || seen.back() != s) seen.push_back(s);
    }
    ASSERT_EQ(seen.size(), 3u);
    EXPECT_EQ(seen[1], Stratum::Origin);
    const Stratum neg = u1 > 0 ? Stratum::SheetTwoExtraRoots : Stratum::SheetNoExtraRoots;
    const Stratum pos = u1 > 0 ? Stratum::SheetNoExtraRoots : Stratum::SheetTwoExtraRoots;
    EXPECT_EQ(seen[0], neg);
    EXPECT_EQ(seen[2], pos);
  }
}

TEST(Swallowtail, StratumMatchesBruteForceRootCount) {
  // Sign changes on a fine grid count the simple real roots of open points.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const double u = uniform(rng, -2, 2), v = uniform(rng, -2, 2), w = uniform(rng, -2, 2);
    int changes = 0;
    double prev = NAN;
    for (int k = 0; k <= 40000; ++k) {
      const double y = -4 + 8.0 * k / 40000;
      const double val = ((y * y + u) * y + v) * y + w;
      if (k > 0 && (val > 0) != (prev > 0)) ++changes;
      prev = val;
    }
    const SwallowtailPoint p = swallowtail_stratum(u, v, w);
    if (!p.confident) continue;
    const Stratum open = changes == 0 ? Stratum::Open0Roots
                                      : (changes == 2 ? Stratum::Open2Roots : Stratum::Open4Roots);
    EXPECT_EQ(p.stratum, open) << u << " " << v << " " << w;
  }
}

TEST(Swallowtail, RootPatternOfCubicWithDoubleRoot) {
  // (y - 1)^2 (y + 2) = y^3 - 3y + 2
  const auto roots = real_root_pattern({2, -3, 0, 1}, -10, 10, 1e-8);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0].value, -2.0, 1e-9);
  EXPECT_EQ(roots[0].multiplicity, 1);
  EXPECT_NEAR(roots[1].value, 1.0, 1e-6);
  EXPECT_EQ(roots[1].multiplicity, 2);
  EXPECT_EQ(stratum_from_roots({{0.0, 4}}), Stratum::Origin);
  EXPECT_EQ(stratum_from_roots({{-1.0, 2}, {1.0, 2}}), Stratum::SelfIntersection);
}
