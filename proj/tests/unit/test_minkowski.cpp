#include <gtest/gtest.h>

#include <random>

#include "minkcurves/errors.hpp"
#include "minkcurves/minkowski.hpp"
#include "test_support.hpp"

using namespace minkcurves;

namespace {

Vec3M random_vec(std::mt19937_64& rng) {
  return {mctest::uniform(rng, -1, 1), mctest::uniform(rng, -1, 1), mctest::uniform(rng, -1, 1)};
}

}  // namespace

TEST(Minkowski, InnerProductSigns) {
  EXPECT_EQ(inner({1, 0, 0}, {1, 0, 0}), 1.0);
  EXPECT_EQ(inner({0, 0, 1}, {0, 0, 1}), -1.0);
  EXPECT_EQ(inner({1, 0, 1}, {1, 0, 1}), 0.0);
}

TEST(Minkowski, CrossBasisValues) {
  const Vec3M p = cross({1, 0, 0}, {0, 1, 0});
  EXPECT_EQ(p.u0, 0.0);
  EXPECT_EQ(p.u1, 0.0);
  EXPECT_EQ(p.u2, -1.0);
  const Vec3M q = cross({1, 0, 1}, {0, 1, 0});
  EXPECT_EQ(q.u0, -1.0);
  EXPECT_EQ(q.u1, 0.0);
  EXPECT_EQ(q.u2, -1.0);
}

TEST(Minkowski, CrossIsDualToDeterminant) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3M u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
    const Vec3M p = cross(u, v);
    EXPECT_NEAR(inner(p, w), det3(u, v, w), 1e-12);
    EXPECT_NEAR(inner(p, u), 0.0, 1e-12);
    EXPECT_NEAR(inner(p, v), 0.0, 1e-12);
    const Vec3M q = cross(v, u);
    EXPECT_EQ(p.u0, -q.u0);
    EXPECT_EQ(p.u1, -q.u1);
    EXPECT_EQ(p.u2, -q.u2);
  }
}

TEST(Minkowski, CausalTypes) {
  EXPECT_EQ(causal_type({1, 0, 0}), CausalType::Spacelike);
  EXPECT_EQ(causal_type({0, 0, 1}), CausalType::Timelike);
  EXPECT_EQ(causal_type({1, 0, 1}), CausalType::Lightlike);
  EXPECT_EQ(causal_type({1, 0, 1 + 1e-12}), CausalType::Lightlike);
  EXPECT_THROW(causal_type({0, 0, 0}), ZeroVector);
}

TEST(Minkowski, ConventionSign) {
  EXPECT_EQ(convention_sign(CrossConvention::Standard), 1.0);
  EXPECT_EQ(convention_sign(CrossConvention::Flipped), -1.0);
}
