#pragma once

#include "proxpair/types.hpp"

namespace proxpair::solvers {

struct MinNormOptions {
  int max_iterations = 5000;
  /// Stop when ||x||^2 - min_s <x, s> <= rel_tol * scale^2.
  double rel_tol = 1e-15;
};

struct MinNormResult {
  Vector z;       ///< minimum-norm point of conv(P) - conv(Q)
  Vector lambda;  ///< weights on the columns of P
  Vector mu;      ///< weights on the columns of Q
  double value = 0.0;
  double lower_bound = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Wolfe's minimum-norm-point algorithm over the Minkowski difference
/// conv(P) - conv(Q), driven by a separable linear minimization oracle so the
/// |P| * |Q| difference vertices are never formed. Euclidean norm only.
MinNormResult min_norm_difference(const Points& P, const Points& Q, const MinNormOptions& options = {});

}  // namespace proxpair::solvers
