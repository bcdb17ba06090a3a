#pragma once

// Brute-force reference for distance and diameter between convex bodies.
// Shares no code with the library's solvers.

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr double kInf = INFINITY;

/// origin + edges * s with s in the unit box [0, 1]^k or the standard simplex.
struct ParamBody {
  Vec origin;
  Mat edges;
  bool simplex = false;

  int params() const { return static_cast<int>(edges.cols()); }
  Vec at(const Vec& s) const { return edges.cols() ? Vec(origin + edges * s) : origin; }
  bool admissible(const Vec& s) const;
};

ParamBody point(const Vec& p);
ParamBody segment(const Vec& a, const Vec& b);
/// Axis-aligned box with lower corner `lo` and side lengths `sides`.
ParamBody box(const Vec& lo, const Vec& sides);
/// Simplex with the given vertices (first one is the origin of the parametrisation).
ParamBody simplex(const std::vector<Vec>& vertices);

/// Weighted p-norm, p = kInf for the max norm.
double pnorm(const Vec& v, double p, const Vec& weights = Vec());

struct Extreme {
  double value = 0.0;
  Vec x;
  Vec y;
};

/// Grid search over the joint parameters: a coarse exhaustive scan, then full
/// sub-grid windows around the best starts, spacing halved down to `step`
/// and then polished to step / 100.
Extreme grid_distance(const ParamBody& A, const ParamBody& B, double p, double step = 1e-3,
                      const Vec& weights = Vec());
Extreme grid_diameter(const ParamBody& A, const ParamBody& B, double p, double step = 1e-3,
                      const Vec& weights = Vec());

/// min over a grid of s in [0, 1] of f(s); returns the minimizing s.
double grid_argmin_1d(double (*f)(double, const void*), const void* ctx, double step = 1e-3);

}  // namespace oracle
