#pragma once

#include "proxpair/body.hpp"
#include "proxpair/kernels.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace proxpair {

/// Single global tolerance for "= d(A, B)" tests.
inline constexpr double kDefaultTol = 1e-7;

struct AnalysisOptions {
  double tol = kDefaultTol;
  /// Sample count for screening and sampled claims.
  std::size_t budget = 256;
  std::uint64_t seed = 0;
  kernels::Exec exec = kernels::Exec::parallel;
};

struct DistanceResult {
  double d = 0.0;
  Vector x;
  Vector y;
  Certificate certificate;
};

/// d(A, B) with witnesses x in A, y in B.
DistanceResult pair_distance(const BodyPair& pair, double tol = kDefaultTol);

struct DiameterResult {
  double delta = 0.0;
  Vector x;
  Vector y;
};

/// delta(H, K) = max ||x - y||, attained at vertices for polytopes.
DiameterResult diameter(const ConvexBody& H, const ConvexBody& K, const NormSpec& norm,
                        kernels::Exec exec = kernels::Exec::parallel);
DiameterResult pair_diameter(const BodyPair& pair, kernels::Exec exec = kernels::Exec::parallel);

/// delta(x, K) = sup over y in K of ||x - y||.
double point_radius(const Vector& x, const ConvexBody& K, const NormSpec& norm,
                    kernels::Exec exec = kernels::Exec::serial);

struct RadiusResult {
  double r = 0.0;
  Vector center;
  Certificate certificate;
};

/// r(H, K) = inf over x in H of delta(x, K), with the minimizing center.
/// Balls H are replaced by an inner polytope; the Hausdorff bound is added to the gap.
RadiusResult restricted_radius(const ConvexBody& H, const ConvexBody& K, const NormSpec& norm,
                               double tol = kDefaultTol);

/// A point of `other` within d + tol of x. With `shift` (other = this + shift,
/// ||shift|| = d) the mate is x + shift; otherwise a metric projection.
std::optional<Vector> resolve_mate(const Vector& x, const ConvexBody& other, const NormSpec& norm, double d,
                                   double tol, const std::optional<Vector>& shift = std::nullopt);

struct CertifiedPoint {
  Vector x;
  Vector mate;
  double distance = 0.0;  ///< ||x - mate||
  bool refined = false;   ///< found by alternating projections rather than screening
};

struct ProximalCore {
  double d = 0.0;
  double tol = kDefaultTol;
  Vector x_d;
  Vector y_d;
  /// Hulls of the certified points; empty when nothing was detected.
  std::optional<ConvexBody> A0;
  std::optional<ConvexBody> B0;
  std::vector<CertifiedPoint> certified_A;
  std::vector<CertifiedPoint> certified_B;
  std::size_t candidates_A = 0;
  std::size_t candidates_B = 0;
  /// Every screened vertex and sample certified, hence A0 = A (resp. B0 = B).
  bool covers_A = false;
  bool covers_B = false;
  /// A0, B0 known analytically: parallel translate or tangent balls under a strictly convex norm.
  bool certified_exact = false;
  /// B = A + shift with ||shift|| = d.
  std::optional<Vector> shift;

  bool detected() const { return A0.has_value() && B0.has_value(); }
  /// Mate in B of a point of A0, or in A of a point of B0. Throws when unresolvable.
  Vector mate_in_B(const BodyPair& pair, const Vector& x) const;
  Vector mate_in_A(const BodyPair& pair, const Vector& y) const;
};

/// Certified proximal points of both sets: vertices, seeded samples and
/// alternating-projection refinements with dist <= d + tol.
ProximalCore proximal_core(const BodyPair& pair, const AnalysisOptions& options = {});

/// x with two mates y, z: ||x - y|| <= d + tol, ||x - z|| <= d + tol, ||y - z|| > 10 tol.
struct MateWitness {
  Vector x;
  Vector y;
  Vector z;
  /// x is a point of A (mates in B), otherwise of B.
  bool x_in_A = true;
  double dxy = 0.0;
  double dxz = 0.0;
  double dyz = 0.0;
};

struct SemisharpVerdict {
  enum class Status { holds_analytic, holds_sampled, fails };
  Status status = Status::holds_sampled;
  std::optional<MateWitness> witness;
  std::size_t points_searched = 0;
  std::string basis;
};

std::string to_string(SemisharpVerdict::Status status);

SemisharpVerdict semisharp_check(const BodyPair& pair, const ProximalCore& core, const AnalysisOptions& options = {});

/// Residual of ||x - y'||^2 + ||x - x'||^2 = ||x - y||^2 = ||x' - y||^2 + ||y' - y||^2.
double pythagorean_residual(const BodyPair& pair, const Vector& x, const Vector& y, const ProximalCore& core);

/// A point z of B with two near-mates x, y in A far apart (then roles swapped).
/// The witness is stored with `x` as the shared point, as in MateWitness.
std::optional<MateWitness> property_uc_falsify(const BodyPair& pair, const ProximalCore& core,
                                               const AnalysisOptions& options = {});

struct PairMetrics {
  double d = 0.0;
  double delta = 0.0;
  double r12 = 0.0;
  double r21 = 0.0;
  double Rmax = 0.0;
  Vector x_d;
  Vector y_d;
  Vector x_delta;
  Vector y_delta;
  Vector center12;
  Vector center21;
  bool proximal = false;
  bool semisharp = false;
  bool sharp = false;
  std::optional<Vector> parallel_h;
  Certificate d_certificate;
  Certificate r12_certificate;
  Certificate r21_certificate;
  double tol = kDefaultTol;
};

PairMetrics pair_metrics(const BodyPair& pair, const ProximalCore& core, const SemisharpVerdict& semisharp,
                         const AnalysisOptions& options = {});

}  // namespace proxpair
