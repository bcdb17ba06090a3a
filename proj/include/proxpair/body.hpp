#pragma once

#include "proxpair/norm.hpp"
#include "proxpair/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace proxpair {

/// A compact convex set in V-representation: a polytope given by (possibly
/// redundant) vertices, a ball of the ambient norm, or a translate of either.
/// Immutable after construction.
class ConvexBody {
 public:
  struct Polytope {
    Points vertices;
  };
  struct Ball {
    Vector center;
    double radius = 0.0;
  };
  struct Translate {
    std::shared_ptr<const ConvexBody> base;
    Vector shift;
  };
  using Repr = std::variant<Polytope, Ball, Translate>;

  static ConvexBody polytope(Points vertices);
  static ConvexBody polytope(const std::vector<Vector>& vertices);
  static ConvexBody point(const Vector& p);
  static ConvexBody ball(Vector center, double radius);
  static ConvexBody translate(const ConvexBody& base, Vector shift);

  int dim() const { return dim_; }
  /// Representation as constructed (translates preserved, for serialization).
  const Repr& repr() const { return repr_; }

  /// Translates folded in.
  bool is_polytope() const { return std::holds_alternative<Polytope>(flat_); }
  bool is_ball() const { return std::holds_alternative<Ball>(flat_); }
  const Points& vertices() const;
  const Ball& as_ball() const;
  /// Single point (polytope whose vertices coincide, or zero-radius ball).
  bool is_singleton(double tol = 0.0) const;

  bool operator==(const ConvexBody& other) const;

 private:
  ConvexBody(Repr repr, std::variant<Polytope, Ball> flat, int dim)
      : repr_(std::move(repr)), flat_(std::move(flat)), dim_(dim) {}

  Repr repr_;
  std::variant<Polytope, Ball> flat_;
  int dim_ = 0;
};

struct BodyPair {
  ConvexBody A;
  ConvexBody B;
  NormSpec norm;

  BodyPair(ConvexBody a, ConvexBody b, NormSpec n);
};

/// True iff v lies within `tol` of the body in the ambient norm.
bool contains(const ConvexBody& body, const Vector& v, const NormSpec& norm, double tol);

struct SupportResult {
  double value = 0.0;
  Vector argpoint;
  /// Vertex index for polytopes, -1 for balls.
  Eigen::Index vertex = -1;
};

/// max <direction, x> over the body; ties broken by lowest vertex index.
SupportResult support(const ConvexBody& body, const Vector& direction, const NormSpec& norm);

/// Extreme points of conv(points) in input order, duplicates collapsed.
Points hull_vertices(const Points& points);
ConvexBody convex_hull(const Points& points);
ConvexBody convex_hull(const std::vector<Vector>& points);

struct TranslateMatch {
  Vector h;  ///< B = A + h
  /// ||h|| = d(A, B) within tolerance.
  bool norm_equals_distance = false;
  double distance = 0.0;
};

/// The shift h with B = A + h (vertex-set matching for polytopes,
/// center/radius matching for balls), if any.
std::optional<TranslateMatch> translate_offset(const BodyPair& pair, double tol);

/// Deterministic samples of the body: Dirichlet combinations of vertices for
/// polytopes, radially uniform draws for balls.
std::vector<Vector> sample(const ConvexBody& body, std::size_t count, std::uint64_t seed, const NormSpec& norm);

struct PolytopeApprox {
  Points vertices;
  /// Hausdorff distance bound between the body and conv(vertices), in the ambient norm.
  double hausdorff_bound = 0.0;
  bool exact = true;
};

/// Inner polytope of a body: exact for polytopes and for l1 / linf balls;
/// otherwise a vertex set on the sphere with a rigorous Hausdorff bound.
PolytopeApprox as_polytope(const ConvexBody& body, const NormSpec& norm, int resolution = 0);

}  // namespace proxpair

#include "proxpair/solvers/polytope_programs.hpp"

namespace proxpair {

/// d(A, B) with witnesses; exact closed forms for balls, convex programs for polytopes.
solvers::DistanceSolution body_distance(const ConvexBody& a, const ConvexBody& b, const NormSpec& norm,
                                        const solvers::ProgramOptions& options = {});

/// Nearest point of the body to v (a metric projection) and its distance.
solvers::DistanceSolution project(const Vector& v, const ConvexBody& body, const NormSpec& norm,
                                  const solvers::ProgramOptions& options = {});

}  // namespace proxpair
