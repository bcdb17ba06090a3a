#include "generators.hpp"
#include "proxpair/body.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace proxpair;
using testgen::poly;
using testgen::vec;

namespace {
ConvexBody unit_square() { return poly({vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1})}); }
}  // namespace

TEST(Body, FactoriesValidate) {
  EXPECT_THROW(ConvexBody::polytope(std::vector<Vector>{}), InvalidArgument);
  EXPECT_THROW(ConvexBody::ball(vec({0, 0}), -1.0), InvalidArgument);
  EXPECT_THROW(poly({vec({0, 0}), vec({1, 0, 0})}), DimensionMismatch);
  EXPECT_THROW(ConvexBody::translate(unit_square(), vec({1, 2, 3})), DimensionMismatch);
  EXPECT_THROW(poly({vec({0, NAN})}), InvalidArgument);
}

TEST(Body, Contains) {
  const auto n = NormSpec::lp(2, 2);
  EXPECT_TRUE(contains(unit_square(), vec({0.5, 0.5}), n, 1e-9));
  EXPECT_FALSE(contains(unit_square(), vec({2, 0}), n, 1e-9));
  EXPECT_TRUE(contains(ConvexBody::ball(vec({0, 0}), 1.0), vec({1, 0}), n, 1e-9));
  EXPECT_TRUE(contains(unit_square(), vec({1.0 + 1e-10, 0.5}), n, 1e-9));
  EXPECT_FALSE(contains(unit_square(), vec({1.0 + 1e-8, 0.5}), n, 1e-9));
  EXPECT_TRUE(contains(ConvexBody::translate(unit_square(), vec({5, 0})), vec({5.5, 0.5}), n, 1e-9));
}

TEST(Body, ContainsUsesTheAmbientNorm) {
  // (1.1, 1.1) is 0.1 from the square in linf, 0.1414 in l2, 0.2 in l1.
  const Vector v = vec({1.1, 1.1});
  EXPECT_TRUE(contains(unit_square(), v, NormSpec::linf(2), 0.1 + 1e-9));
  EXPECT_FALSE(contains(unit_square(), v, NormSpec::lp(2, 2), 0.1 + 1e-9));
  EXPECT_FALSE(contains(unit_square(), v, NormSpec::lp(1, 2), 0.15));
}

TEST(Body, Support) {
  const auto n = NormSpec::lp(2, 2);
  const auto s = support(unit_square(), vec({1, 0}), n);
  EXPECT_DOUBLE_EQ(s.value, 1.0);
  EXPECT_DOUBLE_EQ(s.argpoint[0], 1.0);
  const auto b = support(ConvexBody::ball(vec({0, 0}), 2.0), vec({0, 1}), n);
  EXPECT_DOUBLE_EQ(b.value, 2.0);
  EXPECT_NEAR((b.argpoint - vec({0, 2})).norm(), 0.0, 1e-15);
  const auto t = support(poly({vec({0, 0}), vec({1, 1})}), vec({1, -1}), n);
  EXPECT_DOUBLE_EQ(t.value, 0.0);
  EXPECT_EQ(t.vertex, 0);
  EXPECT_THROW(support(unit_square(), vec({0, 0}), n), InvalidArgument);
}

TEST(Body, BallSupportForGeneralP) {
  const auto n = NormSpec::lp(3, 2);
  const auto s = support(ConvexBody::ball(vec({1, 0}), 1.0), vec({1, 1}), n);
  EXPECT_NEAR(s.value, 1.0 + dual_norm(vec({1, 1}), n), 1e-12);
  EXPECT_NEAR(norm(Vector(s.argpoint - vec({1, 0})), n), 1.0, 1e-12);
}

TEST(Body, ConvexHull) {
  EXPECT_EQ(convex_hull(std::vector<Vector>{vec({0, 0})}).vertices().cols(), 1);
  const auto seg = convex_hull(std::vector<Vector>{vec({0, 0}), vec({1, 0}), vec({0.5, 0})});
  ASSERT_EQ(seg.vertices().cols(), 2);
  EXPECT_EQ(Vector(seg.vertices().col(0)), vec({0, 0}));
  EXPECT_EQ(Vector(seg.vertices().col(1)), vec({1, 0}));

  Rng rng(11);
  std::vector<Vector> pts;
  for (int i = 0; i < 20; ++i) {
    const Vector w = rng.dirichlet(3);
    pts.push_back(w[0] * vec({0, 0}) + w[1] * vec({4, 0}) + w[2] * vec({0, 3}));
  }
  pts.push_back(vec({0, 0}));
  pts.push_back(vec({4, 0}));
  pts.push_back(vec({0, 3}));
  EXPECT_EQ(convex_hull(pts).vertices().cols(), 3);
  EXPECT_THROW(convex_hull(std::vector<Vector>{}), InvalidArgument);
}

TEST(Body, TranslateOffset) {
  const auto n = NormSpec::lp(2, 2);
  const auto A = poly({vec({0, 0}), vec({0, 1})});
  const auto B = poly({vec({1, 0}), vec({1, 1})});
  const auto m = translate_offset(BodyPair(A, B, n), 1e-9);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->h, vec({1, 0}));
  EXPECT_TRUE(m->norm_equals_distance);
  const auto same = translate_offset(BodyPair(A, A, n), 1e-9);
  ASSERT_TRUE(same);
  EXPECT_EQ(same->h, vec({0, 0}));
  const auto tri = poly({vec({0, 0}), vec({1, 0}), vec({0, 1})});
  EXPECT_FALSE(translate_offset(BodyPair(unit_square(), tri, n), 1e-9));
}

TEST(Body, TranslateOffsetIgnoresVertexOrder) {
  const auto n = NormSpec::lp(2, 2);
  const auto A = poly({vec({0, 0}), vec({2, 0}), vec({0, 1})});
  const auto B = poly({vec({5, 1}), vec({3, 2}), vec({3, 1})});
  const auto m = translate_offset(BodyPair(A, B, n), 1e-9);
  ASSERT_TRUE(m);
  EXPECT_NEAR((m->h - vec({3, 1})).norm(), 0.0, 1e-12);
  EXPECT_FALSE(m->norm_equals_distance);
}

TEST(Body, SamplesAreDeterministicAndInside) {
  const auto n = NormSpec::lp(2, 2);
  const auto point = poly({vec({0.25, 0.75})});
  for (const auto& s : sample(point, 5, 1, n)) EXPECT_EQ(s, vec({0.25, 0.75}));
  const auto a = sample(unit_square(), 1000, 42, n);
  const auto b = sample(unit_square(), 1000, 42, n);
  EXPECT_EQ(a, b);
  const auto ball = ConvexBody::ball(vec({0, 0}), 1.0);
  for (const auto& s : sample(ball, 1000, 3, n)) EXPECT_LE(norm(s, n), 1.0 + 1e-9);
  for (const auto& s : a) EXPECT_TRUE(contains(unit_square(), s, n, 1e-9));
}

TEST(Body, PolytopeApproximationOfBalls) {
  const auto ball = ConvexBody::ball(vec({1, 2}), 2.0);
  const auto l2 = as_polytope(ball, NormSpec::lp(2, 2), 24);
  EXPECT_FALSE(l2.exact);
  EXPECT_EQ(l2.vertices.cols(), 24);
  EXPECT_NEAR(l2.hausdorff_bound, 2.0 * (1.0 - std::cos(M_PI / 24)), 1e-15);
  for (Eigen::Index j = 0; j < l2.vertices.cols(); ++j) {
    EXPECT_NEAR((l2.vertices.col(j) - vec({1, 2})).norm(), 2.0, 1e-12);
  }
  const auto linf = as_polytope(ball, NormSpec::linf(2));
  EXPECT_TRUE(linf.exact);
  EXPECT_EQ(linf.vertices.cols(), 4);
  const auto l1 = as_polytope(ConvexBody::ball(vec({0, 0, 0}), 1.0), NormSpec::lp(1, 3));
  EXPECT_EQ(l1.vertices.cols(), 6);
}

TEST(Body, BallDistancesInClosedForm) {
  const auto n = NormSpec::lp(2, 2);
  const auto a = ConvexBody::ball(vec({0, 0}), 1.0);
  const auto b = ConvexBody::ball(vec({4, 0}), 1.0);
  EXPECT_NEAR(body_distance(a, b, n).value, 2.0, 1e-15);
  EXPECT_NEAR(body_distance(a, poly({vec({3, -1}), vec({3, 1})}), n).value, 2.0, 1e-9);
}

TEST(Body, EqualityIsStructural) {
  EXPECT_EQ(unit_square(), unit_square());
  EXPECT_FALSE(unit_square() == ConvexBody::translate(unit_square(), vec({0, 0})));
}
