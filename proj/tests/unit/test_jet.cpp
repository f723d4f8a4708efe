#include <gtest/gtest.h>

#include <random>

#include "minkcurves/errors.hpp"
#include "minkcurves/jet.hpp"
#include "test_support.hpp"

using namespace minkcurves;
using mctest::jet_xy;

TEST(Jet, CoefficientCountMatchesDegree) {
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(Jet2(k).size(), static_cast<std::size_t>((k + 1) * (k + 2) / 2));
}

TEST(Jet, EvaluationAtOriginIsConstantTerm) {
  std::mt19937_64 rng(1);
  const Jet2 a = mctest::random_jet(rng, 4);
  EXPECT_DOUBLE_EQ(a(0.0, 0.0), a.coeff(0, 0));
}

TEST(Jet, MonomialProduct) {
  const Jet2 x = Jet2::monomial(1, 0, 1.0, 2), y = Jet2::monomial(0, 1, 1.0, 2);
  const Jet2 xy = x * y;
  EXPECT_EQ(xy.xy(1, 1), 1.0);
  EXPECT_EQ(xy.max_abs(), 1.0);
}

TEST(Jet, DifferenceOfSquares) {
  const Jet2 a = jet_xy(2, {{0, 0, 1}, {1, 0, 1}});
  const Jet2 b = jet_xy(2, {{0, 0, 1}, {1, 0, -1}});
  const Jet2 p = a * b;
  EXPECT_EQ(p.xy(0, 0), 1.0);
  EXPECT_EQ(p.xy(1, 0), 0.0);
  EXPECT_EQ(p.xy(2, 0), -1.0);
}

TEST(Jet, ProductTruncatesAboveDegree) {
  const Jet2 a = jet_xy(2, {{1, 0, 1}, {0, 2, 1}});
  const Jet2 sq = a * a;
  EXPECT_EQ(sq.degree(), 2);
  EXPECT_EQ(sq.xy(2, 0), 1.0);
  EXPECT_EQ(sq.max_abs(), 1.0);
}

TEST(Jet, LowerDegreeOperandIsPadded) {
  const Jet2 a = jet_xy(1, {{1, 0, 2}});
  const Jet2 b = jet_xy(3, {{0, 3, 1}});
  const Jet2 s = a + b;
  EXPECT_EQ(s.degree(), 3);
  EXPECT_EQ(s.xy(1, 0), 2.0);
  EXPECT_EQ(s.xy(0, 3), 1.0);
}

TEST(Jet, RingAxiomsOnRandomJets) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Jet2 a = mctest::random_jet(rng, 5), b = mctest::random_jet(rng, 5), c = mctest::random_jet(rng, 5);
    const Jet2 assoc = (a * b) * c - a * (b * c);
    const Jet2 distr = a * (b + c) - (a * b + a * c);
    EXPECT_LT(assoc.max_abs(), 1e-12);
    EXPECT_LT(distr.max_abs(), 1e-12);
  }
}

TEST(Jet, Derivatives) {
  const Jet2 a = jet_xy(2, {{2, 0, 1}, {1, 1, 1}});
  const Jet2 ax = differentiate(a, Var::X);
  EXPECT_EQ(ax.xy(1, 0), 2.0);
  EXPECT_EQ(ax.xy(0, 1), 1.0);
  EXPECT_TRUE(differentiate(jet_xy(2, {{2, 0, 1}}), Var::Y).is_zero());
}

TEST(Jet, MixedPartialsCommute) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Jet2 a = mctest::random_jet(rng, 6);
    const Jet2 xy = differentiate(differentiate(a, Var::X), Var::Y);
    const Jet2 yx = differentiate(differentiate(a, Var::Y), Var::X);
    EXPECT_EQ(xy.data(), yx.data());
  }
}

TEST(Jet, ComposeSquareOfSum) {
  const Jet2 outer = jet_xy(2, {{2, 0, 1}});
  const Jet2 u = jet_xy(2, {{1, 0, 1}, {0, 1, 1}});
  const Jet2 c = compose(outer, u, Jet2(2));
  EXPECT_EQ(c.xy(2, 0), 1.0);
  EXPECT_EQ(c.xy(1, 1), 2.0);
  EXPECT_EQ(c.xy(0, 2), 1.0);
}

TEST(Jet, ComposeIdentity) {
  const Jet2 outer = jet_xy(1, {{1, 0, 1}, {0, 1, 1}});
  const Jet2 c = compose(outer, jet_xy(1, {{1, 0, 1}}), jet_xy(1, {{0, 1, 1}}));
  EXPECT_EQ(c.xy(1, 0), 1.0);
  EXPECT_EQ(c.xy(0, 1), 1.0);
}

TEST(Jet, ComposeRejectsConstantTerm) {
  const Jet2 outer = jet_xy(2, {{2, 0, 1}});
  EXPECT_THROW(compose(outer, jet_xy(2, {{0, 0, 1}}), Jet2(2)), NonzeroConstantTerm);
}

TEST(Jet, ComposeMatchesPointwiseComposition) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    // Inner maps of degree 1 keep the truncated composition exact.
    const Jet2 outer = mctest::random_jet(rng, 4);
    Jet2 u = mctest::random_jet(rng, 1), v = mctest::random_jet(rng, 1);
    u.set(0, 0, 0.0);
    v.set(0, 0, 0.0);
    const Jet2 c = compose(outer, u.with_degree(4), v.with_degree(4));
    for (int k = 0; k < 10; ++k) {
      const double x = mctest::uniform(rng, -0.1, 0.1), y = mctest::uniform(rng, -0.1, 0.1);
      EXPECT_NEAR(c(x, y), outer(u(x, y), v(x, y)), 1e-10);
    }
  }
}

TEST(Jet, IftParabola) {
  const Jet2 F = jet_xy(3, {{0, 1, 1}, {2, 0, -1}});
  const Series g = ift_series(F, Var::Y, 3);
  ASSERT_GE(g.size(), 4u);
  EXPECT_NEAR(g[1], 0.0, 1e-15);
  EXPECT_NEAR(g[2], 1.0, 1e-15);
  EXPECT_NEAR(g[3], 0.0, 1e-15);
}

TEST(Jet, IftCubic) {
  const Jet2 F = jet_xy(3, {{1, 0, 1}, {0, 1, 1}, {0, 3, 1}});
  const Series g = ift_series(F, Var::X, 3);
  EXPECT_NEAR(g[1], -1.0, 1e-15);
  EXPECT_NEAR(g[2], 0.0, 1e-15);
  EXPECT_NEAR(g[3], -1.0, 1e-15);
}

TEST(Jet, IftDegenerateThrows) {
  EXPECT_THROW(ift_series(jet_xy(2, {{2, 0, 1}, {0, 1, 1}}), Var::X, 3), DegenerateIFT);
}

TEST(Jet, IftSecondCoefficientClosedForm) {
  // F = l10 u + l11 v + l20 u^2 + l21 u v + l22 v^2, solved for u.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const double l10 = mctest::away_from_zero(rng, 0.3, 1.0), l11 = mctest::uniform(rng, -1, 1);
    const double l20 = mctest::uniform(rng, -1, 1), l21 = mctest::uniform(rng, -1, 1),
                 l22 = mctest::uniform(rng, -1, 1);
    const Jet2 F = jet_xy(4, {{1, 0, l10}, {0, 1, l11}, {2, 0, l20}, {1, 1, l21}, {0, 2, l22}});
    const Series g = ift_series(F, Var::X, 4);
    EXPECT_NEAR(g[1], -l11 / l10, 1e-12);
    const double g2 = -(l11 * l11 * l20 - l10 * l11 * l21 + l10 * l10 * l22) / (l10 * l10 * l10);
    EXPECT_NEAR(g[2], g2, 1e-12 * std::max(1.0, std::abs(g2)));
  }
}

TEST(Jet, IftResidualVanishes) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    Jet2 F = mctest::random_jet(rng, 5);
    F.set(0, 0, 0.0);
    F.set(1, 1, mctest::away_from_zero(rng, 0.5, 1.0));
    const Series g = ift_series(F, Var::Y, 6);
    const Series r = restrict_to_graph(F, Var::Y, g, 6);
    for (double c : r) EXPECT_LT(std::abs(c), 1e-12);
  }
}

TEST(Jet, RecenterShift) {
  const Jet2 a = jet_xy(2, {{2, 0, 1}});
  const Jet2 r = recenter(a, 1.0, 0.0);
  EXPECT_EQ(r.xy(0, 0), 1.0);
  EXPECT_EQ(r.xy(1, 0), 2.0);
  EXPECT_EQ(r.xy(2, 0), 1.0);
}

TEST(Jet, RecenterRoundTrip) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Jet2 a = mctest::random_jet(rng, 5);
    const double px = mctest::uniform(rng, -0.5, 0.5), py = mctest::uniform(rng, -0.5, 0.5);
    EXPECT_EQ(recenter(a, 0.0, 0.0).data(), a.data());
    const Jet2 back = recenter(recenter(a, px, py), -px, -py);
    EXPECT_LT((back - a).max_abs(), 1e-12);
  }
}

TEST(Jet, ResultantOnDiscriminant) {
  const auto r = resultant_quartic_cubic(-2, 0, 1);
  EXPECT_NEAR(r.closed_form, 0.0, 1e-12);
  EXPECT_NEAR(r.sylvester, 0.0, 1e-9);
  const auto z = resultant_quartic_cubic(0, 0, 0);
  EXPECT_EQ(z.closed_form, 0.0);
  EXPECT_NEAR(z.sylvester, 0.0, 1e-12);
}

TEST(Jet, ResultantClosedFormMatchesSylvester) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const double u = mctest::uniform(rng, -2, 2), v = mctest::uniform(rng, -2, 2), w = mctest::uniform(rng, -2, 2);
    const auto r = resultant_quartic_cubic(u, v, w);
    EXPECT_LT(mctest::rel_err(r.closed_form, r.sylvester), 1e-9) << u << " " << v << " " << w;
  }
}
