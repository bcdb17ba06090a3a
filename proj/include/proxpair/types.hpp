#pragma once

#include <Eigen/Dense>

#include <string>

namespace proxpair {

using Vector = Eigen::VectorXd;
/// Point sets are stored column-wise: `points.col(i)` is the i-th point.
using Points = Eigen::MatrixXd;

/// Outcome record attached to every numeric claim produced by an iterative solver.
struct Certificate {
  std::string method;
  int iterations = 0;
  double gap = 0.0;  ///< certified upper bound on (returned value - true optimum)
  bool converged = true;
};

}  // namespace proxpair
