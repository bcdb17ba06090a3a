#pragma once

#include "proxpair/error.hpp"
#include "proxpair/metrics.hpp"
#include "proxpair/trace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace proxpair {

struct AffineMap {
  Eigen::MatrixXd matrix;
  Vector offset;

  Vector operator()(const Vector& x) const { return matrix * x + offset; }
  Points operator()(const Points& X) const { return (matrix * X).colwise() + offset; }
  bool operator==(const AffineMap& other) const {
    return matrix.rows() == other.matrix.rows() && matrix.cols() == other.matrix.cols() &&
           offset.size() == other.offset.size() && matrix == other.matrix && offset == other.offset;
  }
};

/// A cyclic map on A u B given by one affine piece per side.
struct CyclicMapSpec {
  enum class Mode { isometry, audit };
  AffineMap T_AB;  ///< applied to points of A, lands in B
  AffineMap T_BA;  ///< applied to points of B, lands in A
  Mode mode = Mode::isometry;

  bool operator==(const CyclicMapSpec&) const = default;
};

std::string to_string(CyclicMapSpec::Mode mode);
CyclicMapSpec::Mode parse_map_mode(const std::string& text);

/// T(A) is not inside B or T(B) is not inside A.
class CyclicityFailure : public CertificateFailure {
 public:
  using CertificateFailure::CertificateFailure;
};

struct NonexpansiveViolation {
  Vector x;  ///< point of A
  Vector y;  ///< point of B
  double before = 0.0;  ///< ||x - y||
  double after = 0.0;   ///< ||Tx - Ty||
};

struct NonexpansiveCertificate {
  bool holds = false;
  /// Proved from the map structure rather than by sampling.
  bool analytic = false;
  double worst_ratio = 0.0;
  std::size_t samples = 0;
  std::size_t cyclicity_points = 0;
  std::string basis;
  std::optional<NonexpansiveViolation> violation;
};

/// Checks T(A) in B and T(B) in A on vertices plus samples (throws
/// CyclicityFailure), then ||Tx - Ty|| <= ||x - y|| for x in A, y in B.
///
/// Isometry mode proves the bound when both pieces share a norm-preserving
/// linear part M: with equal offsets Tx - Ty = M(x - y); in the Euclidean case
/// unequal offsets c reduce it to |c|^2 + 2<c, M(x - y)> <= 0, linear in x - y
/// and so checked on vertex differences. Anything else is audited by sampling.
NonexpansiveCertificate check_relatively_nonexpansive(const CyclicMapSpec& T, const BodyPair& pair,
                                                      std::size_t budget = 256, std::uint64_t seed = 0,
                                                      double tol = kDefaultTol);

/// Image of a point of A (`in_A`) or of B.
inline Vector apply(const CyclicMapSpec& T, const Vector& x, bool in_A) { return in_A ? T.T_AB(x) : T.T_BA(x); }

struct MidpointResult {
  Vector z1;
  Vector z2;
  double distance = 0.0;  ///< ||z1 - z2||
  double radius1 = 0.0;   ///< delta(z1, K)
  double radius2 = 0.0;   ///< delta(z2, H)
};

/// z1 = (u + v')/2, z2 = (u' + v)/2 with u' the mate of u in K and v' the mate
/// of v in H. Throws CertificateFailure when ||z1 - z2|| misses d by more than tol.
MidpointResult midpoint_refine(const ConvexBody& H, const ConvexBody& K, const Vector& u, const Vector& v,
                               const NormSpec& norm, double d, double tol,
                               const std::optional<Vector>& shift = std::nullopt);

struct ShrinkOptions {
  double tol = kDefaultTol;
  /// Cap on the number of paired orbit points.
  std::size_t budget = 256;
};

struct ShrinkCertificate {
  double gap_before = 0.0;
  double gap_after = 0.0;
  double d_after = 0.0;
  /// Orbit points and the rounds needed for the orbit hull to stop growing.
  std::size_t orbit_points = 0;
  int orbit_rounds = 0;
  bool invariance_ok = false;
  bool gap_ok = false;
  bool distance_ok = false;
  MidpointResult midpoints;
};

struct ShrinkResult {
  ConvexBody H1;
  ConvexBody K1;
  ShrinkCertificate certificate;
};

/// One contraction step. Pairs (z1, z2) are pushed forward by T until the pair
/// orbit closes; H1 and K1 are the hulls of the two sides. Every orbit pair is
/// checked against max(delta(x, K1) - d, delta(x', H1) - d) <= c (delta(H, K) - d).
/// Throws SolverBudgetExhausted when the orbit does not close within the budget
/// and CertificateFailure when the gap inequality or invariance fails.
ShrinkResult shrink_step(const ConvexBody& H, const ConvexBody& K, const CyclicMapSpec& T, const NormSpec& norm,
                         double d, double c, const ShrinkOptions& options = {});

struct BppOptions {
  double tol = kDefaultTol;
  int max_iter = 50;
  std::size_t budget = 256;
  std::uint64_t seed = 0;
  /// Contraction target; derived from the sampled structure constant when absent.
  std::optional<double> c;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// Largest c the solver will use.
inline constexpr double kContractionCap = 0.9999;

/// max((3 + N_hat)/4, 0.75) + margin, capped below 1.
double contraction_target(double N_hat);

struct BppResult {
  Vector x;
  Vector y;
  ShrinkTrace trace;
  double d = 0.0;
  double N_hat = 0.0;
  /// ||x - Tx|| and ||y - Ty||.
  double residual_x = 0.0;
  double residual_y = 0.0;
  bool converged = false;
  /// Run on (A0, B0) because the pair itself was not certified proximal.
  bool reduced = false;
  NonexpansiveCertificate map_certificate;
};

/// Best proximity pair by repeated shrink steps from (A, B) (or (A0, B0)).
/// A failed step ends the run with converged = false and a failing trace level.
BppResult solve_bpp(const BodyPair& pair, const CyclicMapSpec& T, const BppOptions& options = {});

}  // namespace proxpair
