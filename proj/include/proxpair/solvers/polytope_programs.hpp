#pragma once

#include "proxpair/norm.hpp"
#include "proxpair/types.hpp"

#include <optional>

namespace proxpair::solvers {

struct ProgramOptions {
  /// Target certified gap, in the units of the ambient norm.
  double tol = 1e-9;
  /// Budget for the ellipsoid method (general p).
  int max_iterations = 20000;
};

struct DistanceSolution {
  double value = 0.0;  ///< ||x - y||, evaluated at the returned points
  Vector x;            ///< point of conv(P)
  Vector y;            ///< point of conv(Q)
  Vector lambda;
  Vector mu;
  Certificate certificate;
};

/// min ||x - y|| over x in conv(P), y in conv(Q).
/// l2: Wolfe min-norm point; l1 / linf: LP by interior point; otherwise
/// an ellipsoid method over the Minkowski difference.
DistanceSolution polytope_distance(const Points& P, const Points& Q, const NormSpec& norm,
                                   const ProgramOptions& options = {});

struct MinimaxSolution {
  double value = 0.0;  ///< max_k ||center - k||, evaluated at the returned center
  Vector center;       ///< point of conv(H)
  Vector lambda;
  Certificate certificate;
};

/// min over x in conv(H) of max over columns k of K of ||x - k||.
/// l2: epigraph QP; l1 / linf: epigraph LP; otherwise an ellipsoid method
/// with subgradient cuts.
MinimaxSolution polytope_minimax(const Points& H, const Points& K, const NormSpec& norm,
                                 const ProgramOptions& options = {});

/// argmax <direction, y> over y in conv(B) with ||x - y|| <= radius.
/// Polyhedral norms only; empty when the program is infeasible or unsolved.
std::optional<Vector> extreme_point_within(const Vector& x, const Points& B, double radius,
                                           const Vector& direction, const NormSpec& norm);

/// Euclidean projection onto the probability simplex.
Vector project_simplex(const Vector& v);

}  // namespace proxpair::solvers
