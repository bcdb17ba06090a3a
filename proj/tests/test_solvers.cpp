#include "generators.hpp"
#include "proxpair/solvers/ipm.hpp"
#include "proxpair/solvers/min_norm_point.hpp"
#include "proxpair/solvers/polytope_programs.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace proxpair;
using namespace proxpair::solvers;
using testgen::vec;

namespace {

Points cols(std::initializer_list<Vector> pts) {
  Points P(pts.begin()->size(), static_cast<Eigen::Index>(pts.size()));
  Eigen::Index j = 0;
  for (const auto& p : pts) P.col(j++) = p;
  return P;
}

Points unit_square() { return cols({vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1})}); }

}  // namespace

TEST(MinNormPoint, SquareAgainstShiftedSquare) {
  const Points P = unit_square();
  const Points Q = (unit_square().array() + 3.0).matrix();
  const auto r = min_norm_difference(P, Q);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.z.norm(), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_LE(r.lower_bound, r.value + 1e-15);
}

TEST(MinNormPoint, OverlappingSetsGiveZero) {
  const auto r = min_norm_difference(unit_square(), (unit_square().array() + 0.5).matrix());
  EXPECT_NEAR(r.z.norm(), 0.0, 1e-12);
}

TEST(Ipm, SmallLinearProgram) {
  // min -x1 - x2  s.t. x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6.
  QpProblem qp;
  qp.q = Vector::Zero(4);
  qp.c = vec({-1, -1, 0, 0});
  qp.A.resize(2, 4);
  qp.A << 1, 2, 1, 0, 3, 1, 0, 1;
  qp.b = vec({4, 6});
  const auto s = solve_qp(qp);
  EXPECT_TRUE(s.converged);
  EXPECT_NEAR(s.primal_objective, -2.8, 1e-8);
  EXPECT_NEAR(s.x[0], 1.6, 1e-7);
  EXPECT_NEAR(s.x[1], 1.2, 1e-7);
  EXPECT_NEAR(s.primal_objective, s.dual_objective, 1e-7);
}

TEST(Ipm, DiagonalQuadraticProgram) {
  // min 1/2 (x1^2 + x2^2)  s.t. x1 + x2 = 1.
  QpProblem qp;
  qp.q = vec({1, 1});
  qp.c = Vector::Zero(2);
  qp.A = Eigen::MatrixXd::Ones(1, 2);
  qp.b = vec({1});
  const auto s = solve_qp(qp);
  EXPECT_TRUE(s.converged);
  EXPECT_NEAR(s.x[0], 0.5, 1e-7);
  EXPECT_NEAR(s.primal_objective, 0.25, 1e-8);
}

TEST(PolytopeDistance, AllNormsOnSeparatedSquares) {
  const Points P = unit_square();
  const Points Q = (unit_square().array() + 2.0).matrix();
  // Closest points (1,1) and (2,2): difference (1,1).
  const std::vector<std::pair<NormSpec, double>> cases = {
      {NormSpec::lp(1, 2), 2.0}, {NormSpec::lp(2, 2), std::sqrt(2.0)}, {NormSpec::linf(2), 1.0},
      {NormSpec::lp(3, 2), std::cbrt(2.0)}, {NormSpec::lp(1.5, 2), std::pow(2.0, 1.0 / 1.5)}};
  for (const auto& [n, expected] : cases) {
    const auto s = polytope_distance(P, Q, n);
    EXPECT_NEAR(s.value, expected, 1e-8) << "p = " << (n.is_infinity() ? INFINITY : n.p());
    EXPECT_LE(s.certificate.gap, 1e-8);
  }
}

TEST(PolytopeDistance, CertificateBoundsTheTruth) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto A = testgen::random_polytope(rng, 3, 6);
    Points Q = testgen::random_polytope(rng, 3, 5).vertices();
    Q.row(0).array() += 3.0;
    for (const auto& n : {NormSpec::lp(2, 3), NormSpec::lp(1, 3), NormSpec::linf(3), NormSpec::lp(4, 3)}) {
      const auto s = polytope_distance(A.vertices(), Q, n);
      // Any vertex pair is an upper bound.
      double upper = INFINITY;
      for (Eigen::Index i = 0; i < A.vertices().cols(); ++i) {
        for (Eigen::Index j = 0; j < Q.cols(); ++j) upper = std::min(upper, norm(Vector(A.vertices().col(i) - Q.col(j)), n));
      }
      EXPECT_LE(s.value, upper + s.certificate.gap + 1e-12);
      EXPECT_NEAR(s.value, norm(Vector(s.x - s.y), n), 1e-12);
      EXPECT_LE(s.certificate.gap, 1e-7);
    }
  }
}

TEST(PolytopeMinimax, SquareCenter) {
  const Points S = unit_square();
  const auto s = polytope_minimax(S, S, NormSpec::lp(2, 2));
  EXPECT_NEAR(s.value, std::sqrt(0.5), 1e-8);
  EXPECT_NEAR((s.center - vec({0.5, 0.5})).norm(), 0.0, 1e-6);
}

TEST(PolytopeMinimax, FarSquareUnderL3) {
  // Centre restricted to the unit square, radius to a square at (2,2)-(3,3).
  const Points H = unit_square();
  const Points K = (unit_square().array() + 2.0).matrix();
  const auto s = polytope_minimax(H, K, NormSpec::lp(3, 2));
  // Optimum at (1,1) by symmetry: farthest vertex (3,3), distance 2 * 2^(1/3).
  EXPECT_NEAR(s.value, 2.0 * std::cbrt(2.0), 1e-7);
  EXPECT_LE(s.certificate.gap, 1e-8);
}

TEST(PolytopeMinimax, SegmentOneCenter) {
  const Points seg = cols({vec({-1, 0}), vec({1, 0})});
  for (const auto& n : {NormSpec::lp(2, 2), NormSpec::lp(1, 2), NormSpec::linf(2), NormSpec::lp(3, 2)}) {
    const auto s = polytope_minimax(seg, seg, n);
    EXPECT_NEAR(s.value, 1.0, 1e-8);
    EXPECT_NEAR(s.center[0], 0.0, 1e-6);
  }
}

TEST(ProjectSimplex, ResultIsOnTheSimplex) {
  const Vector p = project_simplex(vec({0.5, 2.0, -1.0, 0.1}));
  EXPECT_NEAR(p.sum(), 1.0, 1e-15);
  EXPECT_GE(p.minCoeff(), 0.0);
  EXPECT_NEAR(p[1], 1.0, 1e-15);
}

TEST(PolytopeMinimax, ShortSegmentFarFromItsTarget) {
  // Segment 1.9e-4 long, 1.4 away from a parallel copy: the centre search
  // runs in a tiny box relative to the data.
  Points H(3, 2), K(3, 2);
  H << -0.17371992273108305, -0.17371986024015282, 0.35577369117819629, 0.35588683051392478,
      0.072313947990882879, 0.072460955262168045;
  K << -1.3941065129147041, -1.3941064504237739, -0.35075450325403529, -0.3506413639183068,
      0.61658902353834377, 0.61673603080962891;
  for (const auto& [a, b] : {std::pair{H, K}, std::pair{K, H}}) {
    const auto s = polytope_minimax(a, b, NormSpec::lp(2, 3), {1e-7, 20000});
    EXPECT_TRUE(s.certificate.converged);
    EXPECT_LE(s.certificate.gap, 1e-7);
    double lo = INFINITY;
    for (int i = 0; i <= 1000; ++i) {
      const Vector x = a.col(0) + (a.col(1) - a.col(0)) * (i / 1000.0);
      lo = std::min(lo, std::max((x - b.col(0)).norm(), (x - b.col(1)).norm()));
    }
    EXPECT_LE(s.value, lo + 1e-12);
  }
}
