#include "proxpair/kernels.hpp"

#include "proxpair/error.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace proxpair::kernels {

namespace {

int g_thread_cap = 0;

// Plain p-norm of a - b without temporaries; inputs are already in scaled coordinates.
struct Metric {
  enum class Mode { l1, l2, linf, lp } mode;
  double p;

  explicit Metric(const NormSpec& norm) : mode(Mode::lp), p(norm.p()) {
    if (norm.is_infinity()) {
      mode = Mode::linf;
    } else if (p == 1.0) {
      mode = Mode::l1;
    } else if (p == 2.0) {
      mode = Mode::l2;
    }
  }

  double operator()(const double* a, const double* b, Eigen::Index n) const {
    switch (mode) {
      case Mode::l1: {
        double s = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) s += std::abs(a[r] - b[r]);
        return s;
      }
      case Mode::l2: {
        double s = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
          const double d = a[r] - b[r];
          s += d * d;
        }
        return std::sqrt(s);
      }
      case Mode::linf: {
        double s = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) s = std::max(s, std::abs(a[r] - b[r]));
        return s;
      }
      case Mode::lp:
      default: {
        double scale = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) scale = std::max(scale, std::abs(a[r] - b[r]));
        if (scale == 0.0) return 0.0;
        double s = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) s += std::pow(std::abs(a[r] - b[r]) / scale, p);
        return scale * std::pow(s, 1.0 / p);
      }
    }
  }
};

// Strict total order used for reductions: better value first, then smaller (i, j).
bool better(const ArgExtreme& a, const ArgExtreme& b, bool maximize) {
  if (a.value != b.value) return maximize ? a.value > b.value : a.value < b.value;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

ArgExtreme pair_scan(const Points& P, const Points& Q, const NormSpec& norm, Exec exec, bool maximize) {
  require_same_dim(P.rows(), norm.dim(), "pair scan");
  require_same_dim(Q.rows(), norm.dim(), "pair scan");
  if (P.cols() == 0 || Q.cols() == 0) throw InvalidArgument("pair scan: empty point set");
  const Points Ps = norm.to_scaled(P);
  const Points Qs = norm.to_scaled(Q);
  const Metric metric(norm);
  const Eigen::Index n = Ps.rows();
  const Eigen::Index m = Ps.cols();
  const Eigen::Index k = Qs.cols();
  ArgExtreme best{maximize ? -1.0 : std::numeric_limits<double>::infinity(), 0, 0};

  if (exec == Exec::serial) {
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        const ArgExtreme cand{metric(Ps.col(i).data(), Qs.col(j).data(), n), i, j};
        if (better(cand, best, maximize)) best = cand;
      }
    }
    return best;
  }

#pragma omp parallel
  {
    ArgExtreme local = best;
#pragma omp for schedule(static) nowait
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        const ArgExtreme cand{metric(Ps.col(i).data(), Qs.col(j).data(), n), i, j};
        if (better(cand, local, maximize)) local = cand;
      }
    }
#pragma omp critical(proxpair_pair_scan)
    {
      if (better(local, best, maximize)) best = local;
    }
  }
  return best;
}

}  // namespace

ArgExtreme farthest_pair(const Points& P, const Points& Q, const NormSpec& norm, Exec exec) {
  return pair_scan(P, Q, norm, exec, true);
}

ArgExtreme nearest_pair(const Points& P, const Points& Q, const NormSpec& norm, Exec exec) {
  return pair_scan(P, Q, norm, exec, false);
}

ArgExtreme farthest_point(const Vector& x, const Points& Q, const NormSpec& norm, Exec exec) {
  Points P(x.size(), 1);
  P.col(0) = x;
  return pair_scan(P, Q, norm, exec, true);
}

void set_thread_cap(int threads) {
  g_thread_cap = threads > 0 ? threads : 0;
  omp_set_num_threads(g_thread_cap > 0 ? g_thread_cap : omp_get_num_procs());
}

int thread_cap() { return g_thread_cap; }

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec) {
  if (exec == Exec::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::size_t first_index = n;
  std::mutex guard;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (static_cast<std::size_t>(i) < first_index) {
        first_index = static_cast<std::size_t>(i);
        first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace proxpair::kernels
