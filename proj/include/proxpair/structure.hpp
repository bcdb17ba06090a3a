#pragma once

#include "proxpair/metrics.hpp"
#include "proxpair/trace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace proxpair {

struct SubPair {
  ConvexBody H1;
  ConvexBody H2;
  bool proximal = false;
  /// d(H1, H2) = d(A, B) within tol.
  bool d_matches = false;
  /// At least one of H1, H2 has more than one point.
  bool nondegenerate = false;
};

enum class SubPairFamily {
  proximal,  ///< proximal sub-pairs with matching distance (the N(A, B) family)
  matching,  ///< any sub-pairs with matching distance (the c0 family)
};

/// Seeded sub-pairs; flags are verified, not assumed. The first member is the
/// full pair when it qualifies. Sample i depends only on (seed, i).
std::vector<SubPair> subpair_sampler(const BodyPair& pair, const ProximalCore& core, std::size_t count,
                                     std::uint64_t seed, SubPairFamily family, double tol = kDefaultTol);

struct RatioSample {
  double R = 0.0;
  double delta = 0.0;
  double ratio = 0.0;
  /// delta(H1), the self-diameter of the first set.
  double self_diameter = 0.0;
  /// sqrt((delta(H1)^2 / 2 + d^2) / (delta(H1)^2 + d^2)); Euclidean norms only.
  std::optional<double> hilbert_bound;
  /// max over vertices x of H1 of |delta^2(x, H2) - delta^2(x, H1) - d^2|; Euclidean proximal only.
  std::optional<double> decomposition_residual;
};

RatioSample subpair_ratio(const SubPair& sp, double d, const NormSpec& norm, double tol = kDefaultTol);

struct StructureEstimate {
  double N_hat = 0.0;
  double c0_hat = 0.0;
  std::optional<double> hilbert_bound;
  /// Largest ratio - bound over the sampled sub-pairs (negative when the audit passes).
  std::optional<double> hilbert_excess;
  std::optional<double> decomposition_residual;
  std::size_t samples = 0;
  std::size_t samples_matching = 0;
  std::uint64_t seed = 0;
  /// "(A,B)" or "(A0,B0)" when the pair itself is not proximal.
  std::string basis;
  /// N_hat <= 1 - 1e-3 and the Euclidean bound, when present, below 1.
  bool uniform_normal_structure = false;
};

inline constexpr double kStructureMargin = 1e-3;

StructureEstimate estimate_N(const BodyPair& pair, const ProximalCore& core, std::size_t count, std::uint64_t seed,
                             double tol = kDefaultTol, kernels::Exec exec = kernels::Exec::parallel);

/// Lower bound on c0 from sampled distance-matching sub-pairs.
double estimate_c0(const BodyPair& pair, std::size_t count, std::uint64_t seed, double tol = kDefaultTol,
                   kernels::Exec exec = kernels::Exec::parallel);

struct CenterSets {
  std::vector<Vector> in_C1;
  std::vector<Vector> in_C2;
  double c = 0.0;
  double d = 0.0;
  double gap = 0.0;  ///< delta(C1, C2) - d

  bool empty() const { return in_C1.empty() || in_C2.empty(); }
};

/// Sampled members of {x in C1 : delta(x, C2) - d <= c (delta(C1, C2) - d)} and
/// the symmetric set in C2. Candidates are the restricted-radius centers and
/// boundary points found by bisection along rays toward vertices and samples.
/// `d` defaults to d(C1, C2).
CenterSets fact41_centers(const ConvexBody& C1, const ConvexBody& C2, const NormSpec& norm, double c,
                          std::optional<double> d = std::nullopt, std::size_t count = 16, std::uint64_t seed = 0,
                          double tol = kDefaultTol);

/// Nested tail-hull construction along a minimizing sequence converging to the
/// distance witness. `levels` trace entries; each checks g_m <= c g_{m-1} + 1e-9.
/// A zero gap on a pair that is not a pair of singletons fails the level: then
/// R / delta = 1 > c.
ShrinkTrace nested_hull_demo(const BodyPair& pair, const ProximalCore& core, int levels, double c,
                             std::uint64_t seed, double tol = kDefaultTol);

/// Sequence length used by nested_hull_demo beyond the requested levels.
inline constexpr int kNestedTail = 24;

}  // namespace proxpair
