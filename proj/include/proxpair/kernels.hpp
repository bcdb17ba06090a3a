#pragma once

#include "proxpair/norm.hpp"
#include "proxpair/types.hpp"

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>

namespace proxpair::kernels {

enum class Exec { serial, parallel };

/// Extreme value of a pairwise scan with the (i, j) indices that attain it.
/// Ties resolve to the lexicographically smallest (i, j) in both variants, so
/// serial and parallel results are identical.
struct ArgExtreme {
  double value = 0.0;
  Eigen::Index i = 0;
  Eigen::Index j = 0;
};

/// max over columns i of P, j of Q of ||P_i - Q_j||.
ArgExtreme farthest_pair(const Points& P, const Points& Q, const NormSpec& norm, Exec exec = Exec::parallel);
/// min over columns i of P, j of Q of ||P_i - Q_j||.
ArgExtreme nearest_pair(const Points& P, const Points& Q, const NormSpec& norm, Exec exec = Exec::parallel);
/// max over columns j of Q of ||x - Q_j||; `i` is unused (0).
ArgExtreme farthest_point(const Vector& x, const Points& Q, const NormSpec& norm, Exec exec = Exec::parallel);

/// Cap on OpenMP threads used by the parallel variants (0 = runtime default).
void set_thread_cap(int threads);
int thread_cap();

/// Runs body(i) for i in [0, n). Bodies must write only to slot i of their
/// outputs. The first exception by index is rethrown after the loop.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec = Exec::parallel);

namespace serial {
inline ArgExtreme farthest_pair(const Points& P, const Points& Q, const NormSpec& norm) {
  return kernels::farthest_pair(P, Q, norm, Exec::serial);
}
inline ArgExtreme nearest_pair(const Points& P, const Points& Q, const NormSpec& norm) {
  return kernels::nearest_pair(P, Q, norm, Exec::serial);
}
}  // namespace serial

}  // namespace proxpair::kernels
