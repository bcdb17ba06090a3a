#include "proxpair/solvers/ipm.hpp"

#include "proxpair/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace proxpair::solvers {

namespace {

double max_step(const Vector& v, const Vector& dv) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
  }
  return alpha;
}

}  // namespace

QpSolution solve_qp(const QpProblem& problem, const IpmOptions& options) {
  const Eigen::MatrixXd& A = problem.A;
  const Vector& b = problem.b;
  const Vector& c = problem.c;
  const Vector& q = problem.q;
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (c.size() != n || q.size() != n || b.size() != m) {
    throw InvalidArgument("solve_qp: inconsistent problem dimensions");
  }
  const bool quadratic = q.cwiseAbs().maxCoeff() > 0.0;

  QpSolution sol;
  Vector x = Vector::Ones(n);
  Vector z = Vector::Ones(n);
  Vector y = Vector::Zero(m);

  const double bnorm = 1.0 + b.cwiseAbs().maxCoeff();
  const double cnorm = 1.0 + c.cwiseAbs().maxCoeff();

  Eigen::LDLT<Eigen::MatrixXd> ldlt;
  for (int it = 0; it < options.max_iterations; ++it) {
    const Vector rp = b - A * x;
    const Vector rd = c + q.cwiseProduct(x) - A.transpose() * y - z;
    const double mu = x.dot(z) / static_cast<double>(n);
    const double quad = 0.5 * q.dot(x.cwiseProduct(x));
    sol.primal_objective = c.dot(x) + quad;
    sol.dual_objective = b.dot(y) - quad;
    sol.iterations = it;
    const double gap = std::abs(sol.primal_objective - sol.dual_objective);
    if (rp.cwiseAbs().maxCoeff() <= options.feasibility_tol * bnorm &&
        rd.cwiseAbs().maxCoeff() <= options.feasibility_tol * cnorm &&
        gap <= options.gap_tol * (1.0 + std::abs(sol.primal_objective))) {
      sol.converged = true;
      break;
    }
    // Complementarity exhausted; further steps only lose digits.
    if (mu < 1e-20) break;

    const Vector d = (q + z.cwiseQuotient(x)).cwiseInverse();
    const Eigen::MatrixXd M = A * d.asDiagonal() * A.transpose();
    Eigen::MatrixXd Mreg = M;
    Mreg.diagonal().array() += 1e-14 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
    ldlt.compute(Mreg);

    auto newton = [&](const Vector& rc, Vector& dx, Vector& dy, Vector& dz) {
      const Vector r = -rd + rc.cwiseQuotient(x);
      const Vector rhs = rp - A * d.cwiseProduct(r);
      dy = ldlt.solve(rhs);
      // Refinement against the unregularized matrix recovers digits lost to conditioning.
      for (int k = 0; k < 3; ++k) dy += ldlt.solve(Vector(rhs - M * dy));
      dx = d.cwiseProduct(A.transpose() * dy + r);
      dz = (rc - z.cwiseProduct(dx)).cwiseQuotient(x);
    };

    Vector dx_aff, dy_aff, dz_aff;
    newton(-x.cwiseProduct(z), dx_aff, dy_aff, dz_aff);
    double ap = max_step(x, dx_aff);
    double ad = max_step(z, dz_aff);
    if (quadratic) ap = ad = std::min(ap, ad);
    const double mu_aff = (x + ap * dx_aff).dot(z + ad * dz_aff) / static_cast<double>(n);
    const double sigma = std::pow(std::max(mu_aff, 0.0) / std::max(mu, 1e-300), 3.0);

    const Vector rc = Vector::Constant(n, sigma * mu) - x.cwiseProduct(z) - dx_aff.cwiseProduct(dz_aff);
    Vector dx, dy, dz;
    newton(rc, dx, dy, dz);
    ap = std::min(1.0, 0.995 * max_step(x, dx));
    ad = std::min(1.0, 0.995 * max_step(z, dz));
    if (quadratic) ap = ad = std::min(ap, ad);
    if (!dx.allFinite() || !dy.allFinite() || !dz.allFinite()) break;
    x += ap * dx;
    y += ad * dy;
    z += ad * dz;
    // Keep strictly interior.
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = std::max(x[i], std::numeric_limits<double>::min());
      z[i] = std::max(z[i], std::numeric_limits<double>::min());
    }
  }
  sol.x = x;
  sol.y = y;
  sol.z = z;
  return sol;
}

}  // namespace proxpair::solvers
