// Seeded randomized invariants. Each case prints its seed on failure.

#include "generators.hpp"
#include "grid_oracle.hpp"
#include "proxpair/metrics.hpp"
#include "proxpair/structure.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace proxpair;

namespace {

std::vector<NormSpec> norms(int dim) {
  return {NormSpec::lp(2, dim), NormSpec::lp(1, dim), NormSpec::linf(dim), NormSpec::lp(3, dim),
          NormSpec::lp(1.5, dim, std::vector<double>(static_cast<std::size_t>(dim), 0.5))};
}

Vector random_vec(Rng& rng, int dim, double s = 1.0) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.uniform(-s, s);
  return v;
}

}  // namespace

TEST(Property, NormAxioms) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const int dim = 1 + static_cast<int>(rng.index(5));
    for (const auto& n : norms(dim)) {
      const Vector x = random_vec(rng, dim);
      const Vector y = random_vec(rng, dim);
      const double t = rng.uniform(-3, 3);
      EXPECT_NEAR(norm(Vector(t * x), n), std::abs(t) * norm(x, n), 1e-12) << "seed " << seed;
      EXPECT_LE(norm(Vector(x + y), n), norm(x, n) + norm(y, n) + 1e-12) << "seed " << seed;
      EXPECT_LE(x.dot(y), dual_norm(y, n) * norm(x, n) + 1e-12) << "seed " << seed;
      const Vector m = dual_maximizer(y, n);
      EXPECT_NEAR(norm(m, n), 1.0, 1e-9) << "seed " << seed;
      EXPECT_NEAR(m.dot(y), dual_norm(y, n), 1e-9) << "seed " << seed;
    }
  }
}

TEST(Property, SupportDominatesEveryPoint) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const int dim = 2 + static_cast<int>(rng.index(3));
    const auto n = NormSpec::lp(2, dim);
    const auto body = testgen::random_polytope(rng, dim, 8);
    const Vector dir = random_vec(rng, dim);
    const auto s = support(body, dir, n);
    for (const auto& x : sample(body, 50, seed, n)) EXPECT_GE(s.value + 1e-12, dir.dot(x)) << "seed " << seed;
    const auto ball = ConvexBody::ball(random_vec(rng, dim), rng.uniform(0.1, 2));
    for (const auto& bn : norms(dim)) {
      const auto sb = support(ball, dir, bn);
      for (const auto& x : sample(ball, 50, seed, bn)) EXPECT_GE(sb.value + 1e-9, dir.dot(x)) << "seed " << seed;
    }
  }
}

TEST(Property, HullIsIdempotent) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const int dim = 2 + static_cast<int>(rng.index(3));
    const auto body = testgen::random_polytope(rng, dim, 12);
    const Points once = hull_vertices(body.vertices());
    const Points twice = hull_vertices(once);
    EXPECT_EQ(once, twice) << "seed " << seed;
    for (Eigen::Index j = 0; j < body.vertices().cols(); ++j) {
      EXPECT_TRUE(contains(ConvexBody::polytope(once), body.vertices().col(j), NormSpec::lp(2, dim), 1e-9))
          << "seed " << seed;
    }
  }
}

TEST(Property, DistanceRadiusDiameterOrdering) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const int dim = 2 + static_cast<int>(rng.index(2));
    const auto A = testgen::random_polytope(rng, dim, 5);
    const auto B = ConvexBody::translate(testgen::random_polytope(rng, dim, 5), random_vec(rng, dim, 2.0));
    for (const auto& n : norms(dim)) {
      const BodyPair ab(A, B, n);
      const BodyPair ba(B, A, n);
      const double d = pair_distance(ab).d;
      EXPECT_NEAR(d, pair_distance(ba).d, 1e-7) << "seed " << seed;
      const double delta = pair_diameter(ab).delta;
      EXPECT_EQ(delta, pair_diameter(ba).delta) << "seed " << seed;
      const double r = restricted_radius(A, B, n).r;
      EXPECT_LE(d, r + 1e-7) << "seed " << seed;
      EXPECT_LE(r, delta + 1e-7) << "seed " << seed;
    }
  }
}

TEST(Property, SerialAndParallelAgree) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto A = testgen::random_polytope(rng, 3, 200);
    const auto B = testgen::random_polytope(rng, 3, 300);
    for (const auto& n : norms(3)) {
      const auto s = kernels::farthest_pair(A.vertices(), B.vertices(), n, kernels::Exec::serial);
      const auto p = kernels::farthest_pair(A.vertices(), B.vertices(), n, kernels::Exec::parallel);
      EXPECT_EQ(s.value, p.value);
      EXPECT_EQ(s.i, p.i);
      EXPECT_EQ(s.j, p.j);
      const auto sn = kernels::nearest_pair(A.vertices(), B.vertices(), n, kernels::Exec::serial);
      const auto pn = kernels::nearest_pair(A.vertices(), B.vertices(), n, kernels::Exec::parallel);
      EXPECT_EQ(sn.value, pn.value);
      EXPECT_EQ(sn.i, pn.i);
    }
    const auto pair = testgen::random_parallel_pair(seed, 3);
    const BodyPair bp(pair.A, pair.B, NormSpec::lp(2, 3));
    const auto core = proximal_core(bp);
    EXPECT_EQ(estimate_N(bp, core, 64, seed, kDefaultTol, kernels::Exec::serial).N_hat,
              estimate_N(bp, core, 64, seed, kDefaultTol, kernels::Exec::parallel).N_hat);
  }
}

TEST(Property, DistanceMatchesGridOracleOnSegments) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const Vector a0 = random_vec(rng, 2), a1 = random_vec(rng, 2);
    const Vector b0 = random_vec(rng, 2, 3.0), b1 = random_vec(rng, 2, 3.0);
    const auto A = ConvexBody::polytope(std::vector<Vector>{a0, a1});
    const auto B = ConvexBody::polytope(std::vector<Vector>{b0, b1});
    for (const auto& [n, p] : {std::pair{NormSpec::lp(2, 2), 2.0}, std::pair{NormSpec::linf(2), oracle::kInf},
                               std::pair{NormSpec::lp(1, 2), 1.0}, std::pair{NormSpec::lp(3, 2), 3.0}}) {
      const auto g = oracle::grid_distance(oracle::segment(a0, a1), oracle::segment(b0, b1), p, 1e-6);
      EXPECT_NEAR(pair_distance(BodyPair(A, B, n)).d, g.value, 1e-5) << "seed " << seed;
    }
  }
}
