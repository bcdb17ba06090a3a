#pragma once

#include "proxpair/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace proxpair {

/// Weighted p-norm on R^dim: ||x|| = || diag(w) x ||_p, with p in [1, inf].
/// p = inf is a separate variant, never a large finite exponent.
class NormSpec {
 public:
  enum class Kind { finite, infinity };

  static NormSpec lp(double p, int dim, std::vector<double> weights = {});
  static NormSpec linf(int dim, std::vector<double> weights = {});

  Kind kind() const { return kind_; }
  bool is_infinity() const { return kind_ == Kind::infinity; }
  /// Exponent; only meaningful when `!is_infinity()`.
  double p() const { return p_; }
  int dim() const { return dim_; }
  const std::vector<double>& weights() const { return weights_; }
  bool weighted() const { return !weights_.empty(); }
  double weight(int i) const { return weights_.empty() ? 1.0 : weights_[static_cast<std::size_t>(i)]; }

  bool is_l1() const { return !is_infinity() && p_ == 1.0; }
  bool is_l2() const { return !is_infinity() && p_ == 2.0; }
  /// l1 or linf: unit ball is a polytope.
  bool is_polyhedral() const { return is_infinity() || is_l1(); }
  /// Unit sphere contains no segment. Exact for this family.
  bool strictly_convex() const { return dim_ == 1 || (!is_infinity() && p_ > 1.0); }

  /// diag(w) v, the coordinates in which the norm is an unweighted p-norm.
  Vector to_scaled(const Vector& v) const;
  Vector from_scaled(const Vector& v) const;
  Points to_scaled(const Points& v) const;

  /// Constants with lower * ||x||_2 <= ||x|| <= upper * ||x||_2.
  double l2_lower() const;
  double l2_upper() const;

  bool operator==(const NormSpec&) const = default;

 private:
  NormSpec(Kind kind, double p, int dim, std::vector<double> weights);

  Kind kind_;
  double p_;
  int dim_;
  std::vector<double> weights_;
};

double norm(const Vector& v, const NormSpec& spec);
/// Dual norm sup{<u, x> : ||x|| <= 1}.
double dual_norm(const Vector& u, const NormSpec& spec);
/// A maximizer of <u, x> over the unit ball; lowest index wins ties.
Vector dual_maximizer(const Vector& u, const NormSpec& spec);
/// Unweighted p-norm helpers used by solvers in scaled coordinates.
double plain_norm(const Vector& v, const NormSpec& spec);
/// Gradient of the unweighted p-norm at v (a dual unit vector); zero at v = 0.
Vector plain_norm_gradient(const Vector& v, const NormSpec& spec);

struct ConvexityVerdict {
  enum class Status { strictly_convex, not_strictly_convex, unknown };
  Status status = Status::unknown;
  /// c1 != c2 on the unit sphere with ||(c1 + c2) / 2|| = 1.
  std::optional<std::pair<Vector, Vector>> witness;
};

/// Analytic for 1 < p < inf; for p in {1, inf} returns a flat-face witness,
/// verified before return.
ConvexityVerdict is_strictly_convex(const NormSpec& spec);

inline constexpr double kNormEqualityTol = 1e-12;
inline constexpr double kSegmentThreshold = 1e-9;

}  // namespace proxpair
