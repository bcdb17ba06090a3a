#include "proxpair/solvers/polytope_programs.hpp"

#include "proxpair/error.hpp"
#include "proxpair/solvers/ipm.hpp"
#include "proxpair/solvers/min_norm_point.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace proxpair::solvers {

namespace {

// Affine normalization v -> W (v - ref) / s, chosen so the data has unit spread.
// Distances in the ambient norm become plain p-norm distances scaled by 1/s.
struct Frame {
  Vector ref;
  double s = 1.0;
  const NormSpec* norm = nullptr;

  Points map(const Points& pts) const { return norm->to_scaled(Points(pts.colwise() - ref)) / s; }
  Vector map(const Vector& v) const { return norm->to_scaled(Vector(v - ref)) / s; }
};

Frame make_frame(const Points& P, const Points& Q, const NormSpec& norm) {
  Frame f;
  f.norm = &norm;
  const Vector lo = P.rowwise().minCoeff().cwiseMin(Q.rowwise().minCoeff());
  const Vector hi = P.rowwise().maxCoeff().cwiseMax(Q.rowwise().maxCoeff());
  f.ref = 0.5 * (lo + hi);
  double spread = 0.0;
  for (Eigen::Index r = 0; r < P.rows(); ++r) {
    spread = std::max(spread, norm.weight(static_cast<int>(r)) * (hi[r] - lo[r]));
  }
  f.s = spread > 0.0 ? spread : 1.0;
  return f;
}

Vector clean_weights(const Vector& w) {
  Vector out = w.cwiseMax(0.0);
  const double sum = out.sum();
  if (!(sum > 0.0)) return Vector::Constant(w.size(), 1.0 / static_cast<double>(w.size()));
  return out / sum;
}

double farthest(const Vector& x, const Points& K, const NormSpec& norm) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < K.cols(); ++j) best = std::max(best, proxpair::norm(Vector(x - K.col(j)), norm));
  return best;
}

// Column layout helper for assembling standard-form programs.
struct Program {
  QpProblem qp;
  Eigen::Index cols = 0;
  Eigen::Index rows = 0;

  Program(Eigen::Index n_rows, Eigen::Index n_cols) : cols(n_cols), rows(n_rows) {
    qp.A = Eigen::MatrixXd::Zero(n_rows, n_cols);
    qp.b = Vector::Zero(n_rows);
    qp.c = Vector::Zero(n_cols);
    qp.q = Vector::Zero(n_cols);
  }
};

// ---------------------------------------------------------------- distance

DistanceSolution distance_l2(const Points& P, const Points& Q, const Frame& f) {
  const MinNormResult r = min_norm_difference(f.map(P), f.map(Q));
  DistanceSolution out;
  out.lambda = r.lambda;
  out.mu = r.mu;
  out.certificate.method = "wolfe-min-norm-point";
  out.certificate.iterations = r.iterations;
  out.certificate.converged = r.converged;
  out.certificate.gap = std::max(0.0, r.lower_bound) * f.s;  // lower bound
  return out;
}

DistanceSolution distance_polyhedral(const Points& P, const Points& Q, const Frame& f, bool linf) {
  const Points Pm = f.map(P);
  const Points Qm = f.map(Q);
  const Eigen::Index n = P.rows();
  const Eigen::Index m = P.cols();
  const Eigen::Index k = Q.cols();
  // columns: lambda | mu | (t or e_r) | slack+ | slack-
  const Eigen::Index n_obj = linf ? 1 : n;
  const Eigen::Index c_lam = 0;
  const Eigen::Index c_mu = m;
  const Eigen::Index c_obj = m + k;
  const Eigen::Index c_sp = c_obj + n_obj;
  const Eigen::Index c_sm = c_sp + n;
  Program prog(2 * n + 2, c_sm + n);
  auto& A = prog.qp.A;
  for (Eigen::Index r = 0; r < n; ++r) {
    const Eigen::Index up = 2 * r;
    const Eigen::Index dn = 2 * r + 1;
    A.block(up, c_lam, 1, m) = Pm.row(r);
    A.block(up, c_mu, 1, k) = -Qm.row(r);
    A.block(dn, c_lam, 1, m) = -Pm.row(r);
    A.block(dn, c_mu, 1, k) = Qm.row(r);
    const Eigen::Index obj = linf ? c_obj : c_obj + r;
    A(up, obj) = -1.0;
    A(dn, obj) = -1.0;
    A(up, c_sp + r) = 1.0;
    A(dn, c_sm + r) = 1.0;
  }
  A.block(2 * n, c_lam, 1, m).setOnes();
  A.block(2 * n + 1, c_mu, 1, k).setOnes();
  prog.qp.b[2 * n] = 1.0;
  prog.qp.b[2 * n + 1] = 1.0;
  prog.qp.c.segment(c_obj, n_obj).setOnes();
  const QpSolution sol = solve_qp(prog.qp);

  DistanceSolution out;
  out.lambda = clean_weights(sol.x.segment(c_lam, m));
  out.mu = clean_weights(sol.x.segment(c_mu, k));
  out.certificate.method = linf ? "ipm-lp-linf" : "ipm-lp-l1";
  out.certificate.iterations = sol.iterations;
  out.certificate.converged = sol.converged;
  out.certificate.gap = std::max(0.0, sol.dual_objective) * f.s;  // lower bound
  return out;
}

// Central-cut ellipsoid method over a polytope S = conv(V) that is full
// dimensional in its affine hull. Each center is projected onto S (Euclidean,
// Wolfe); centers outside S get a separating cut, feasible centers an objective
// cut f(x*) >= f(x) + <g, x* - x>. Every center yields the lower bound
// f(x) - sqrt(g' P g) because the ellipsoid always contains the minimizers.
struct EllipsoidResult {
  Vector weights;  ///< convex weights (over V's columns) of the best point
  double upper = std::numeric_limits<double>::infinity();
  double lower = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Objective and a subgradient at a point of S.
using Oracle = std::function<double(const Vector& x, Vector& grad)>;

EllipsoidResult ellipsoid_minimize(const Points& V, const Oracle& f, double target, int max_iterations) {
  const Eigen::Index n = V.rows();
  const Vector centroid = V.rowwise().mean();
  const Points D = V.colwise() - centroid;
  const double spread = D.colwise().norm().maxCoeff();
  EllipsoidResult out;
  out.weights = Vector::Constant(V.cols(), 1.0 / static_cast<double>(V.cols()));
  Vector grad(n);
  if (spread == 0.0) {
    out.upper = f(centroid, grad);
    out.lower = out.upper;
    out.converged = true;
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeThinU);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > 1e-12 * spread * std::sqrt(static_cast<double>(V.cols()))) ++k;
  }
  const Eigen::MatrixXd basis = svd.matrixU().leftCols(k);
  const Points Vc = D;
  Vector t = Vector::Zero(k);  // center, subspace coordinates about the centroid
  const double radius = 1.01 * spread;
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(k, k) * (radius * radius);
  // Above the rounding noise of x = basis * t.
  const double feasible_eps = 1e-9 * spread;
  for (; out.iterations < max_iterations; ++out.iterations) {
    const Vector x = basis * t;
    const MinNormResult proj = min_norm_difference(Points(x), Vc);
    const Vector w = Vc * proj.mu;
    Vector g;
    const double dist = (x - w).norm();
    const double fw = f(Vector(w + centroid), grad);
    if (fw < out.upper) {
      out.upper = fw;
      out.weights = proj.mu;
    }
    // f is convex on the whole space, so its minorant at x bounds the
    // minimum over E, which contains the minimizers, feasible or not.
    const double fx = f(Vector(x + centroid), grad);
    const Vector gf = basis.transpose() * grad;
    out.lower = std::max(out.lower, fx - std::sqrt(std::max(0.0, gf.dot(P * gf))) - gf.norm() * feasible_eps);
    if (dist > feasible_eps) {
      g = basis.transpose() * (x - w);
    } else {
      g = gf;
    }
    if (out.upper - out.lower <= target) {
      out.converged = true;
      break;
    }
    const double gpg = g.dot(P * g);
    if (!(gpg > 0.0)) {
      // Zero subgradient at a feasible center: it is optimal.
      if (dist <= feasible_eps) {
        out.lower = out.upper;
        out.converged = true;
      }
      break;
    }
    const Vector pg = P * g / std::sqrt(gpg);
    if (k == 1) {
      t -= 0.5 * pg;
      P *= 0.25;
    } else {
      const double kk = static_cast<double>(k);
      t -= pg / (kk + 1.0);
      P = (kk * kk / (kk * kk - 1.0)) * (P - (2.0 / (kk + 1.0)) * pg * pg.transpose());
      P = 0.5 * (P + P.transpose());
    }
  }
  return out;
}

DistanceSolution distance_ellipsoid(const Points& P, const Points& Q, const Frame& f,
                                    const ProgramOptions& options) {
  const NormSpec& norm = *f.norm;
  const Points Pm = f.map(P);
  const Points Qm = f.map(Q);
  const Eigen::Index m = P.cols();
  const Eigen::Index k = Q.cols();
  Points diff(P.rows(), m * k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) diff.col(j * m + i) = Pm.col(i) - Qm.col(j);
  }
  const EllipsoidResult r = ellipsoid_minimize(
      diff,
      [&](const Vector& z, Vector& grad) {
        grad = plain_norm_gradient(z, norm);
        return plain_norm(z, norm);
      },
      options.tol / f.s, options.max_iterations);
  DistanceSolution out;
  out.lambda = Vector::Zero(m);
  out.mu = Vector::Zero(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      out.lambda[i] += r.weights[j * m + i];
      out.mu[j] += r.weights[j * m + i];
    }
  }
  out.lambda = clean_weights(out.lambda);
  out.mu = clean_weights(out.mu);
  out.certificate.method = "ellipsoid";
  out.certificate.iterations = r.iterations;
  out.certificate.converged = r.converged;
  out.certificate.gap = r.lower * f.s;  // lower bound
  return out;
}

// ----------------------------------------------------------------- minimax

MinimaxSolution minimax_l2(const Points& H, const Points& K, const Frame& f) {
  const Points Hm = f.map(H);
  const Points Km = f.map(K);
  const Eigen::Index n = H.rows();
  const Eigen::Index m = H.cols();
  const Eigen::Index k = K.cols();
  const Vector lo = Hm.rowwise().minCoeff();
  // f(x) = ||x||^2 + s, s >= ||k_j||^2 - 2 <x, k_j>; s is shifted by M to stay nonnegative.
  const double big = 2.0 * Hm.colwise().norm().maxCoeff() * Km.colwise().norm().maxCoeff() + 1.0;
  // columns: lambda | xs (x - lo) | sigma | slack_j
  const Eigen::Index c_lam = 0;
  const Eigen::Index c_x = m;
  const Eigen::Index c_sig = m + n;
  const Eigen::Index c_sl = c_sig + 1;
  Program prog(n + 1 + k, c_sl + k);
  auto& A = prog.qp.A;
  auto& b = prog.qp.b;
  for (Eigen::Index r = 0; r < n; ++r) {
    A.block(r, c_lam, 1, m) = -Hm.row(r);
    A(r, c_x + r) = 1.0;
    b[r] = -lo[r];
  }
  A.block(n, c_lam, 1, m).setOnes();
  b[n] = 1.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::Index row = n + 1 + j;
    A(row, c_sig) = 1.0;
    A.block(row, c_x, 1, n) = 2.0 * Km.col(j).transpose();
    A(row, c_sl + j) = -1.0;
    b[row] = Km.col(j).squaredNorm() + big - 2.0 * lo.dot(Km.col(j));
  }
  prog.qp.q.segment(c_x, n).setConstant(2.0);
  prog.qp.c.segment(c_x, n) = 2.0 * lo;
  prog.qp.c[c_sig] = 1.0;
  const QpSolution sol = solve_qp(prog.qp);
  const double constant = lo.squaredNorm() - big;
  const double lb2 = std::max(0.0, sol.dual_objective + constant);

  MinimaxSolution out;
  out.lambda = clean_weights(sol.x.segment(c_lam, m));
  out.certificate.method = "ipm-qp-epigraph";
  out.certificate.iterations = sol.iterations;
  out.certificate.converged = sol.converged;
  out.certificate.gap = std::sqrt(lb2) * f.s;  // lower bound; turned into a gap by the caller
  return out;
}

MinimaxSolution minimax_polyhedral(const Points& H, const Points& K, const Frame& f, bool linf) {
  const Points Hm = f.map(H);
  const Points Km = f.map(K);
  const Eigen::Index n = H.rows();
  const Eigen::Index m = H.cols();
  const Eigen::Index k = K.cols();
  MinimaxSolution out;
  QpSolution sol;
  if (linf) {
    // columns: lambda | t | slacks (2 n k)
    const Eigen::Index c_t = m;
    const Eigen::Index c_s = m + 1;
    Program prog(2 * n * k + 1, c_s + 2 * n * k);
    auto& A = prog.qp.A;
    auto& b = prog.qp.b;
    Eigen::Index row = 0;
    for (Eigen::Index j = 0; j < k; ++j) {
      for (Eigen::Index r = 0; r < n; ++r) {
        A.block(row, 0, 1, m) = Hm.row(r);
        A(row, c_t) = -1.0;
        A(row, c_s + row) = 1.0;
        b[row] = Km(r, j);
        ++row;
        A.block(row, 0, 1, m) = -Hm.row(r);
        A(row, c_t) = -1.0;
        A(row, c_s + row) = 1.0;
        b[row] = -Km(r, j);
        ++row;
      }
    }
    A.block(row, 0, 1, m).setOnes();
    b[row] = 1.0;
    prog.qp.c[c_t] = 1.0;
    sol = solve_qp(prog.qp);
    out.certificate.method = "ipm-lp-epigraph-linf";
  } else {
    // columns: lambda | t | e (n k) | slacks (2 n k) | slack_j (k)
    const Eigen::Index c_t = m;
    const Eigen::Index c_e = m + 1;
    const Eigen::Index c_s = c_e + n * k;
    const Eigen::Index c_sj = c_s + 2 * n * k;
    Program prog(2 * n * k + k + 1, c_sj + k);
    auto& A = prog.qp.A;
    auto& b = prog.qp.b;
    Eigen::Index row = 0;
    for (Eigen::Index j = 0; j < k; ++j) {
      for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index e = c_e + j * n + r;
        A.block(row, 0, 1, m) = Hm.row(r);
        A(row, e) = -1.0;
        A(row, c_s + row) = 1.0;
        b[row] = Km(r, j);
        ++row;
        A.block(row, 0, 1, m) = -Hm.row(r);
        A(row, e) = -1.0;
        A(row, c_s + row) = 1.0;
        b[row] = -Km(r, j);
        ++row;
      }
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      A.block(row, c_e + j * n, 1, n).setOnes();
      A(row, c_t) = -1.0;
      A(row, c_sj + j) = 1.0;
      ++row;
    }
    A.block(row, 0, 1, m).setOnes();
    b[row] = 1.0;
    prog.qp.c[c_t] = 1.0;
    sol = solve_qp(prog.qp);
    out.certificate.method = "ipm-lp-epigraph-l1";
  }
  out.lambda = clean_weights(sol.x.head(m));
  out.certificate.iterations = sol.iterations;
  out.certificate.converged = sol.converged;
  out.certificate.gap = std::max(0.0, sol.dual_objective) * f.s;  // lower bound
  return out;
}

MinimaxSolution minimax_ellipsoid(const Points& H, const Points& K, const Frame& f,
                                  const ProgramOptions& options) {
  const NormSpec& norm = *f.norm;
  const Points Hm = f.map(H);
  const Points Km = f.map(K);
  const EllipsoidResult r = ellipsoid_minimize(
      Hm,
      [&](const Vector& x, Vector& grad) {
        double fx = -1.0;
        Eigen::Index jstar = 0;
        for (Eigen::Index j = 0; j < Km.cols(); ++j) {
          const double v = plain_norm(Vector(x - Km.col(j)), norm);
          if (v > fx) {
            fx = v;
            jstar = j;
          }
        }
        grad = plain_norm_gradient(Vector(x - Km.col(jstar)), norm);
        return fx;
      },
      options.tol / f.s, options.max_iterations);
  MinimaxSolution out;
  out.lambda = clean_weights(r.weights);
  out.certificate.method = "ellipsoid";
  out.certificate.iterations = r.iterations;
  out.certificate.converged = r.converged;
  out.certificate.gap = r.lower * f.s;  // lower bound
  return out;
}

}  // namespace

Vector project_simplex(const Vector& v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0;
  double theta = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    css += u[static_cast<std::size_t>(i)];
    const double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[static_cast<std::size_t>(i)] - t > 0.0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

namespace {

// Turns the lower bound carried in certificate.gap into a gap at the returned point.
template <typename Solution, typename Evaluate>
Solution settle(Solution s, double tol, Evaluate&& evaluate) {
  const double lower = s.certificate.gap;
  evaluate(s);
  s.certificate.gap = std::max(0.0, s.value - lower);
  s.certificate.converged = s.certificate.converged || s.certificate.gap <= tol;
  return s;
}

// Keeps the better point and the better lower bound of two certified runs.
template <typename Solution>
Solution combine(Solution a, const Solution& b) {
  const double lower = std::max(a.value - a.certificate.gap, b.value - b.certificate.gap);
  Solution best = b.value < a.value ? b : a;
  best.certificate.method = a.certificate.method + "+" + b.certificate.method;
  best.certificate.iterations = a.certificate.iterations + b.certificate.iterations;
  best.certificate.gap = std::max(0.0, best.value - lower);
  best.certificate.converged = a.certificate.converged || b.certificate.converged;
  return best;
}

}  // namespace

DistanceSolution polytope_distance(const Points& P, const Points& Q, const NormSpec& norm,
                                   const ProgramOptions& options) {
  require_same_dim(P.rows(), norm.dim(), "polytope_distance");
  require_same_dim(Q.rows(), norm.dim(), "polytope_distance");
  if (P.cols() == 0 || Q.cols() == 0) throw InvalidArgument("polytope_distance: empty vertex set");
  auto evaluate = [&](DistanceSolution& s) {
    s.x = P * s.lambda;
    s.y = Q * s.mu;
    s.value = proxpair::norm(Vector(s.x - s.y), norm);
  };
  if (P.cols() == 1 && Q.cols() == 1) {
    DistanceSolution out;
    out.lambda = Vector::Ones(1);
    out.mu = Vector::Ones(1);
    out.certificate.method = "closed-form";
    evaluate(out);
    return out;
  }
  const Frame f = make_frame(P, Q, norm);
  if (!norm.is_l2() && !norm.is_polyhedral()) return settle(distance_ellipsoid(P, Q, f, options), options.tol, evaluate);
  DistanceSolution out = settle(norm.is_l2() ? distance_l2(P, Q, f) : distance_polyhedral(P, Q, f, norm.is_infinity()),
                                options.tol, evaluate);
  if (out.certificate.gap > options.tol) {
    out = combine(out, settle(distance_ellipsoid(P, Q, f, options), options.tol, evaluate));
  }
  return out;
}

MinimaxSolution polytope_minimax(const Points& H, const Points& K, const NormSpec& norm,
                                 const ProgramOptions& options) {
  require_same_dim(H.rows(), norm.dim(), "polytope_minimax");
  require_same_dim(K.rows(), norm.dim(), "polytope_minimax");
  if (H.cols() == 0 || K.cols() == 0) throw InvalidArgument("polytope_minimax: empty vertex set");
  MinimaxSolution out;
  if (K.cols() == 1) {
    // max over one point is a distance; avoids the square-root loss of the QP near zero.
    const DistanceSolution d = polytope_distance(H, K, norm, options);
    out.center = d.x;
    out.lambda = d.lambda;
    out.value = d.value;
    out.certificate = d.certificate;
    return out;
  }
  if (H.cols() == 1) {
    out.lambda = Vector::Ones(1);
    out.center = H.col(0);
    out.value = farthest(out.center, K, norm);
    out.certificate.method = "closed-form";
    return out;
  }
  auto evaluate = [&](MinimaxSolution& s) {
    s.center = H * s.lambda;
    s.value = farthest(s.center, K, norm);
  };
  const Frame f = make_frame(H, K, norm);
  if (!norm.is_l2() && !norm.is_polyhedral()) return settle(minimax_ellipsoid(H, K, f, options), options.tol, evaluate);
  out = settle(norm.is_l2() ? minimax_l2(H, K, f) : minimax_polyhedral(H, K, f, norm.is_infinity()), options.tol,
               evaluate);
  if (out.certificate.gap > options.tol) {
    out = combine(out, settle(minimax_ellipsoid(H, K, f, options), options.tol, evaluate));
  }
  return out;
}

std::optional<Vector> extreme_point_within(const Vector& x, const Points& B, double radius,
                                           const Vector& direction, const NormSpec& norm) {
  if (!norm.is_polyhedral()) throw InvalidArgument("extreme_point_within: polyhedral norms only");
  require_same_dim(B.rows(), norm.dim(), "extreme_point_within");
  const Eigen::Index n = B.rows();
  const Eigen::Index k = B.cols();
  Points both(n, k + 1);
  both.leftCols(k) = B;
  both.col(k) = x;
  const Frame f = make_frame(both, both, norm);
  const Points Bm = f.map(B);
  const Vector xm = f.map(x);
  const double rho = radius / f.s;
  // The objective is expressed in original coordinates: <u, B mu>.
  const Vector obj = -(B.transpose() * direction);
  const double oscale = std::max(1.0, obj.cwiseAbs().maxCoeff());
  QpSolution sol;
  if (norm.is_infinity()) {
    // columns: mu | slack+ | slack-
    Program prog(2 * n + 1, k + 2 * n);
    for (Eigen::Index r = 0; r < n; ++r) {
      prog.qp.A.block(2 * r, 0, 1, k) = Bm.row(r);
      prog.qp.A(2 * r, k + r) = 1.0;
      prog.qp.b[2 * r] = xm[r] + rho;
      prog.qp.A.block(2 * r + 1, 0, 1, k) = -Bm.row(r);
      prog.qp.A(2 * r + 1, k + n + r) = 1.0;
      prog.qp.b[2 * r + 1] = rho - xm[r];
    }
    prog.qp.A.block(2 * n, 0, 1, k).setOnes();
    prog.qp.b[2 * n] = 1.0;
    prog.qp.c.head(k) = obj / oscale;
    sol = solve_qp(prog.qp);
  } else {
    // columns: mu | e | slack+ | slack- | slack_sum
    const Eigen::Index c_e = k;
    const Eigen::Index c_sp = k + n;
    const Eigen::Index c_sm = c_sp + n;
    const Eigen::Index c_ss = c_sm + n;
    Program prog(2 * n + 2, c_ss + 1);
    for (Eigen::Index r = 0; r < n; ++r) {
      prog.qp.A.block(2 * r, 0, 1, k) = Bm.row(r);
      prog.qp.A(2 * r, c_e + r) = -1.0;
      prog.qp.A(2 * r, c_sp + r) = 1.0;
      prog.qp.b[2 * r] = xm[r];
      prog.qp.A.block(2 * r + 1, 0, 1, k) = -Bm.row(r);
      prog.qp.A(2 * r + 1, c_e + r) = -1.0;
      prog.qp.A(2 * r + 1, c_sm + r) = 1.0;
      prog.qp.b[2 * r + 1] = -xm[r];
    }
    prog.qp.A.block(2 * n, c_e, 1, n).setOnes();
    prog.qp.A(2 * n, c_ss) = 1.0;
    prog.qp.b[2 * n] = rho;
    prog.qp.A.block(2 * n + 1, 0, 1, k).setOnes();
    prog.qp.b[2 * n + 1] = 1.0;
    prog.qp.c.head(k) = obj / oscale;
    sol = solve_qp(prog.qp);
  }
  if (!sol.converged) return std::nullopt;
  return Vector(B * clean_weights(sol.x.head(k)));
}

}  // namespace proxpair::solvers
