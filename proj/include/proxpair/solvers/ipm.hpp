#pragma once

#include "proxpair/types.hpp"

namespace proxpair::solvers {

/// min 1/2 sum_i q_i x_i^2 + c^T x   s.t.  A x = b,  x >= 0,  with q >= 0.
/// Q = 0 gives a linear program.
struct QpProblem {
  Vector q;
  Vector c;
  Eigen::MatrixXd A;
  Vector b;
};

struct IpmOptions {
  int max_iterations = 150;
  double feasibility_tol = 1e-9;
  double gap_tol = 1e-9;
};

struct QpSolution {
  Vector x;
  Vector y;
  Vector z;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Mehrotra predictor-corrector interior-point method. Dense normal equations,
/// intended for the small programs that arise from low-dimensional polytopes.
QpSolution solve_qp(const QpProblem& problem, const IpmOptions& options = {});

}  // namespace proxpair::solvers
