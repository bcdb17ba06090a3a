#include "proxpair/solvers/min_norm_point.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace proxpair::solvers {

namespace {

struct Oracle {
  const Points& P;
  const Points& Q;

  // argmin over conv(P) - conv(Q) of <x, .>, lowest index on ties.
  std::pair<Eigen::Index, Eigen::Index> operator()(const Vector& x) const {
    Eigen::Index bi = 0;
    Eigen::Index bj = 0;
    double vi = P.col(0).dot(x);
    for (Eigen::Index i = 1; i < P.cols(); ++i) {
      const double v = P.col(i).dot(x);
      if (v < vi) {
        vi = v;
        bi = i;
      }
    }
    double vj = Q.col(0).dot(x);
    for (Eigen::Index j = 1; j < Q.cols(); ++j) {
      const double v = Q.col(j).dot(x);
      if (v > vj) {
        vj = v;
        bj = j;
      }
    }
    return {bi, bj};
  }
};

// Weights alpha (summing to one) of the minimum-norm point of aff(S).
Vector affine_minimizer(const Points& S) {
  const Eigen::Index k = S.cols();
  Vector alpha(k);
  if (k == 1) {
    alpha[0] = 1.0;
    return alpha;
  }
  const Eigen::MatrixXd B = S.rightCols(k - 1).colwise() - S.col(0);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(B);
  cod.setThreshold(1e-12);
  const Vector beta = -cod.solve(S.col(0));
  alpha[0] = 1.0 - beta.sum();
  alpha.tail(k - 1) = beta;
  return alpha;
}

}  // namespace

MinNormResult min_norm_difference(const Points& P, const Points& Q, const MinNormOptions& options) {
  const Eigen::Index n = P.rows();
  const Oracle lmo{P, Q};
  double scale2 = 0.0;
  for (Eigen::Index i = 0; i < P.cols(); ++i) scale2 = std::max(scale2, P.col(i).squaredNorm());
  for (Eigen::Index j = 0; j < Q.cols(); ++j) scale2 = std::max(scale2, Q.col(j).squaredNorm());
  scale2 = 4.0 * scale2 + 1e-300;

  std::vector<std::pair<Eigen::Index, Eigen::Index>> ids;
  Points S(n, 0);
  Vector w;

  auto point_of = [&](std::pair<Eigen::Index, Eigen::Index> id) -> Vector {
    return P.col(id.first) - Q.col(id.second);
  };
  auto push = [&](std::pair<Eigen::Index, Eigen::Index> id, double weight) {
    ids.push_back(id);
    S.conservativeResize(n, S.cols() + 1);
    S.col(S.cols() - 1) = point_of(id);
    w.conservativeResize(w.size() + 1);
    w[w.size() - 1] = weight;
  };
  auto drop_small = [&](double tol) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (w[i] > tol) keep.push_back(i);
    }
    if (keep.empty()) {
      Eigen::Index arg = 0;
      w.maxCoeff(&arg);
      keep.push_back(arg);
    }
    Points S2(n, static_cast<Eigen::Index>(keep.size()));
    Vector w2(static_cast<Eigen::Index>(keep.size()));
    std::vector<std::pair<Eigen::Index, Eigen::Index>> ids2;
    for (std::size_t t = 0; t < keep.size(); ++t) {
      S2.col(static_cast<Eigen::Index>(t)) = S.col(keep[t]);
      w2[static_cast<Eigen::Index>(t)] = w[keep[t]];
      ids2.push_back(ids[static_cast<std::size_t>(keep[t])]);
    }
    S = std::move(S2);
    w = w2 / w2.sum();
    ids = std::move(ids2);
  };

  const Vector start_dir = P.rowwise().mean() - Q.rowwise().mean();
  push(lmo(start_dir), 1.0);

  MinNormResult out;
  constexpr double kWeightTol = 1e-14;
  Vector x = S * w;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    x = S * w;
    const double xx = x.squaredNorm();
    if (xx <= 1e-30 * scale2) {
      out.converged = true;
      break;
    }
    const auto id = lmo(x);
    const Vector s = point_of(id);
    const double xs = x.dot(s);
    if (xx - xs <= options.rel_tol * scale2) {
      out.converged = true;
      break;
    }
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
      // The oracle returned a corral member: no further progress is possible
      // in floating point.
      out.converged = true;
      break;
    }
    push(id, 0.0);
    for (int minor = 0; minor < 4 * static_cast<int>(n) + 8; ++minor) {
      const Vector alpha = affine_minimizer(S);
      if (alpha.minCoeff() > kWeightTol) {
        w = alpha;
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (alpha[i] <= kWeightTol) {
          const double denom = w[i] - alpha[i];
          if (denom > 0) theta = std::min(theta, w[i] / denom);
        }
      }
      theta = std::clamp(theta, 0.0, 1.0);
      w = theta * alpha + (1.0 - theta) * w;
      for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = std::max(w[i], 0.0);
      drop_small(kWeightTol);
    }
  }
  x = S * w;
  out.iterations = it;
  out.z = x;
  out.value = x.norm();
  out.lambda = Vector::Zero(P.cols());
  out.mu = Vector::Zero(Q.cols());
  for (std::size_t t = 0; t < ids.size(); ++t) {
    out.lambda[ids[t].first] += w[static_cast<Eigen::Index>(t)];
    out.mu[ids[t].second] += w[static_cast<Eigen::Index>(t)];
  }
  if (out.value > 0.0) {
    const auto id = lmo(x);
    out.lower_bound = std::max(0.0, x.dot(point_of(id)) / out.value);
  }
  return out;
}

}  // namespace proxpair::solvers
