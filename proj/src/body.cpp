#include "proxpair/body.hpp"

#include "proxpair/error.hpp"
#include "proxpair/rng.hpp"
#include "proxpair/solvers/min_norm_point.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace proxpair {

namespace {

void require_finite(const Points& pts, const char* where) {
  if (!pts.allFinite()) throw InvalidArgument(std::string(where) + ": non-finite coordinates");
}

Points one_column(const Vector& v) {
  Points p(v.size(), 1);
  p.col(0) = v;
  return p;
}

}  // namespace

// ------------------------------------------------------------------ ConvexBody

ConvexBody ConvexBody::polytope(Points vertices) {
  if (vertices.cols() < 1) throw InvalidArgument("polytope: at least one vertex is required");
  if (vertices.rows() < 1) throw InvalidArgument("polytope: vertices must have positive dimension");
  require_finite(vertices, "polytope");
  const int dim = static_cast<int>(vertices.rows());
  Polytope p{std::move(vertices)};
  return ConvexBody(Repr{p}, std::variant<Polytope, Ball>{p}, dim);
}

ConvexBody ConvexBody::polytope(const std::vector<Vector>& vertices) {
  if (vertices.empty()) throw InvalidArgument("polytope: at least one vertex is required");
  Points pts(vertices.front().size(), static_cast<Eigen::Index>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    require_same_dim(vertices[i].size(), pts.rows(), "polytope");
    pts.col(static_cast<Eigen::Index>(i)) = vertices[i];
  }
  return polytope(std::move(pts));
}

ConvexBody ConvexBody::point(const Vector& p) { return polytope(one_column(p)); }

ConvexBody ConvexBody::ball(Vector center, double radius) {
  if (center.size() < 1) throw InvalidArgument("ball: center must have positive dimension");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw InvalidArgument("ball: radius must be finite and >= 0");
  if (!center.allFinite()) throw InvalidArgument("ball: non-finite center");
  const int dim = static_cast<int>(center.size());
  Ball b{std::move(center), radius};
  return ConvexBody(Repr{b}, std::variant<Polytope, Ball>{b}, dim);
}

ConvexBody ConvexBody::translate(const ConvexBody& base, Vector shift) {
  require_same_dim(shift.size(), base.dim(), "translate");
  if (!shift.allFinite()) throw InvalidArgument("translate: non-finite shift");
  std::variant<Polytope, Ball> flat = base.flat_;
  if (auto* p = std::get_if<Polytope>(&flat)) {
    p->vertices.colwise() += shift;
  } else {
    std::get<Ball>(flat).center += shift;
  }
  Translate t{std::make_shared<const ConvexBody>(base), std::move(shift)};
  return ConvexBody(Repr{std::move(t)}, std::move(flat), base.dim());
}

const Points& ConvexBody::vertices() const {
  if (const auto* p = std::get_if<Polytope>(&flat_)) return p->vertices;
  throw InvalidArgument("vertices: body is a ball; use as_polytope");
}

const ConvexBody::Ball& ConvexBody::as_ball() const {
  if (const auto* b = std::get_if<Ball>(&flat_)) return *b;
  throw InvalidArgument("as_ball: body is a polytope");
}

bool ConvexBody::is_singleton(double tol) const {
  if (const auto* b = std::get_if<Ball>(&flat_)) return b->radius <= tol;
  const Points& v = std::get<Polytope>(flat_).vertices;
  for (Eigen::Index i = 1; i < v.cols(); ++i) {
    if ((v.col(i) - v.col(0)).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

bool ConvexBody::operator==(const ConvexBody& other) const {
  if (dim_ != other.dim_ || repr_.index() != other.repr_.index()) return false;
  if (const auto* p = std::get_if<Polytope>(&repr_)) {
    const auto& q = std::get<Polytope>(other.repr_);
    return p->vertices.rows() == q.vertices.rows() && p->vertices.cols() == q.vertices.cols() &&
           p->vertices == q.vertices;
  }
  if (const auto* b = std::get_if<Ball>(&repr_)) {
    const auto& c = std::get<Ball>(other.repr_);
    return b->radius == c.radius && b->center == c.center;
  }
  const auto& t = std::get<Translate>(repr_);
  const auto& u = std::get<Translate>(other.repr_);
  return t.shift == u.shift && *t.base == *u.base;
}

BodyPair::BodyPair(ConvexBody a, ConvexBody b, NormSpec n) : A(std::move(a)), B(std::move(b)), norm(std::move(n)) {
  require_same_dim(A.dim(), B.dim(), "pair");
  require_same_dim(A.dim(), norm.dim(), "pair norm");
}

// ------------------------------------------------------------------- distance

solvers::DistanceSolution project(const Vector& v, const ConvexBody& body, const NormSpec& norm,
                                  const solvers::ProgramOptions& options) {
  return body_distance(ConvexBody::point(v), body, norm, options);
}

solvers::DistanceSolution body_distance(const ConvexBody& a, const ConvexBody& b, const NormSpec& norm,
                                        const solvers::ProgramOptions& options) {
  require_same_dim(a.dim(), norm.dim(), "distance");
  require_same_dim(b.dim(), norm.dim(), "distance");
  if (a.is_polytope() && b.is_polytope()) {
    return solvers::polytope_distance(a.vertices(), b.vertices(), norm, options);
  }
  solvers::DistanceSolution out;
  out.certificate.method = "closed-form";
  if (a.is_ball() && b.is_ball()) {
    const auto& ba = a.as_ball();
    const auto& bb = b.as_ball();
    const Vector delta = bb.center - ba.center;
    const double len = proxpair::norm(delta, norm);
    if (len <= ba.radius + bb.radius) {
      const double t = len > 0.0 ? std::max(0.0, 1.0 - bb.radius / len) : 0.0;
      out.x = ba.center + t * delta;
      out.y = out.x;
    } else {
      out.x = ba.center + (ba.radius / len) * delta;
      out.y = bb.center - (bb.radius / len) * delta;
    }
    out.value = proxpair::norm(Vector(out.x - out.y), norm);
    return out;
  }
  // One ball, one polytope: d = max(0, dist(center, P) - r).
  const bool ball_first = a.is_ball();
  const auto& ball = ball_first ? a.as_ball() : b.as_ball();
  const Points& P = ball_first ? b.vertices() : a.vertices();
  const solvers::DistanceSolution c = solvers::polytope_distance(one_column(ball.center), P, norm, options);
  const Vector near = c.y;
  const double len = c.value;
  Vector on_ball = ball.center;
  if (len > 0.0) on_ball = ball.center + std::min(1.0, ball.radius / len) * (near - ball.center);
  out.certificate = c.certificate;
  out.x = ball_first ? on_ball : near;
  out.y = ball_first ? near : on_ball;
  if (ball_first) {
    out.mu = c.mu;
  } else {
    out.lambda = c.mu;
  }
  out.value = proxpair::norm(Vector(out.x - out.y), norm);
  return out;
}

// ------------------------------------------------------------------- queries

bool contains(const ConvexBody& body, const Vector& v, const NormSpec& norm, double tol) {
  require_same_dim(v.size(), body.dim(), "contains");
  require_same_dim(v.size(), norm.dim(), "contains");
  if (!(tol > 0.0)) throw InvalidArgument("contains: tol must be positive");
  if (body.is_ball()) {
    const auto& b = body.as_ball();
    return proxpair::norm(Vector(v - b.center), norm) <= b.radius + tol;
  }
  const Points& V = body.vertices();
  // Euclidean distance brackets the ambient one; solve exactly only when ambiguous.
  const Vector centroid = V.rowwise().mean();
  const auto e = solvers::min_norm_difference(one_column(Vector(v - centroid)), Points(V.colwise() - centroid));
  if (norm.l2_upper() * e.value <= tol) return true;
  if (norm.l2_lower() * e.lower_bound > tol) return false;
  return solvers::polytope_distance(one_column(v), V, norm).value <= tol;
}

SupportResult support(const ConvexBody& body, const Vector& direction, const NormSpec& norm) {
  require_same_dim(direction.size(), body.dim(), "support");
  if (direction.cwiseAbs().maxCoeff() == 0.0) throw InvalidArgument("support: zero direction");
  SupportResult out;
  if (body.is_ball()) {
    const auto& b = body.as_ball();
    out.value = direction.dot(b.center) + b.radius * dual_norm(direction, norm);
    out.argpoint = b.center + b.radius * dual_maximizer(direction, norm);
    return out;
  }
  const Points& V = body.vertices();
  Eigen::Index best = 0;
  double value = V.col(0).dot(direction);
  for (Eigen::Index i = 1; i < V.cols(); ++i) {
    const double s = V.col(i).dot(direction);
    if (s > value) {
      value = s;
      best = i;
    }
  }
  out.value = value;
  out.vertex = best;
  out.argpoint = V.col(best);
  return out;
}

Points hull_vertices(const Points& points) {
  if (points.cols() < 1) throw InvalidArgument("convex_hull: empty input");
  require_finite(points, "convex_hull");
  const double scale = 1.0 + points.cwiseAbs().maxCoeff();
  const double eps = 1e-10 * scale;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    bool dup = false;
    for (Eigen::Index k : keep) {
      if ((points.col(i) - points.col(k)).cwiseAbs().maxCoeff() <= 1e-14 * scale) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(i);
  }
  const Vector centroid = points.rowwise().mean();
  for (std::size_t t = 0; t < keep.size() && keep.size() > 1;) {
    Points others(points.rows(), static_cast<Eigen::Index>(keep.size() - 1));
    Eigen::Index c = 0;
    for (std::size_t u = 0; u < keep.size(); ++u) {
      if (u != t) others.col(c++) = points.col(keep[u]) - centroid;
    }
    const auto r = solvers::min_norm_difference(one_column(Vector(points.col(keep[t]) - centroid)), others);
    if (r.value <= eps) {
      keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(t));
    } else {
      ++t;
    }
  }
  Points out(points.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t t = 0; t < keep.size(); ++t) out.col(static_cast<Eigen::Index>(t)) = points.col(keep[t]);
  return out;
}

ConvexBody convex_hull(const Points& points) { return ConvexBody::polytope(hull_vertices(points)); }

ConvexBody convex_hull(const std::vector<Vector>& points) {
  if (points.empty()) throw InvalidArgument("convex_hull: empty input");
  return convex_hull(ConvexBody::polytope(points).vertices());
}

std::optional<TranslateMatch> translate_offset(const BodyPair& pair, double tol) {
  const ConvexBody& A = pair.A;
  const ConvexBody& B = pair.B;
  const NormSpec& norm = pair.norm;
  std::optional<Vector> h;
  if (A.is_ball() && B.is_ball()) {
    if (std::abs(A.as_ball().radius - B.as_ball().radius) <= tol) h = B.as_ball().center - A.as_ball().center;
  } else if (A.is_polytope() && B.is_polytope()) {
    const Points va = hull_vertices(A.vertices());
    const Points vb = hull_vertices(B.vertices());
    if (va.cols() == vb.cols()) {
      for (Eigen::Index j = 0; j < vb.cols() && !h; ++j) {
        const Vector cand = vb.col(j) - va.col(0);
        bool all = true;
        for (Eigen::Index i = 0; i < va.cols() && all; ++i) {
          const Vector target = va.col(i) + cand;
          bool found = false;
          for (Eigen::Index k = 0; k < vb.cols() && !found; ++k) {
            found = proxpair::norm(Vector(vb.col(k) - target), norm) <= tol;
          }
          all = found;
        }
        if (all) h = cand;
      }
    }
  }
  if (!h) return std::nullopt;
  TranslateMatch out;
  out.h = *h;
  out.distance = body_distance(A, B, norm).value;
  out.norm_equals_distance = std::abs(proxpair::norm(out.h, norm) - out.distance) <= tol;
  return out;
}

std::vector<Vector> sample(const ConvexBody& body, std::size_t count, std::uint64_t seed, const NormSpec& norm) {
  if (count < 1) throw InvalidArgument("sample: count must be >= 1");
  require_same_dim(body.dim(), norm.dim(), "sample");
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(seed, k);
    if (body.is_polytope()) {
      const Points& V = body.vertices();
      out.emplace_back(V * rng.dirichlet(V.cols()));
    } else {
      const auto& b = body.as_ball();
      Vector g(body.dim());
      for (Eigen::Index r = 0; r < g.size(); ++r) g[r] = rng.normal();
      const double gn = plain_norm(g, norm);
      const double rad = b.radius * std::pow(rng.uniform(), 1.0 / body.dim());
      if (gn == 0.0) {
        out.push_back(b.center);
      } else {
        out.emplace_back(b.center + norm.from_scaled(Vector(g * (rad / gn))));
      }
    }
  }
  return out;
}

PolytopeApprox as_polytope(const ConvexBody& body, const NormSpec& norm, int resolution) {
  PolytopeApprox out;
  if (body.is_polytope()) {
    out.vertices = body.vertices();
    return out;
  }
  const auto& b = body.as_ball();
  const int n = body.dim();
  std::vector<Vector> unit;  // points on the plain unit sphere, scaled coordinates
  if (n == 1) {
    unit = {Vector::Constant(1, -1.0), Vector::Constant(1, 1.0)};
  } else if (norm.is_infinity()) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      Vector s(n);
      for (int r = 0; r < n; ++r) s[r] = (mask >> r) & 1 ? 1.0 : -1.0;
      unit.push_back(s);
    }
  } else if (norm.is_l1()) {
    for (int r = 0; r < n; ++r) {
      for (double sgn : {-1.0, 1.0}) {
        Vector e = Vector::Zero(n);
        e[r] = sgn;
        unit.push_back(e);
      }
    }
  } else if (norm.is_l2() && n == 2) {
    const int m = resolution > 0 ? resolution : 64;
    for (int t = 0; t < m; ++t) {
      const double a = 2.0 * std::numbers::pi * t / m;
      Vector e(2);
      e << std::cos(a), std::sin(a);
      unit.push_back(e);
    }
    out.exact = false;
    out.hausdorff_bound = b.radius * (1.0 - std::cos(std::numbers::pi / m));
  } else {
    // Grid on the faces of the cube, pushed radially onto the sphere.
    const int k = resolution > 0 ? resolution : (n <= 3 ? 8 : 4);
    std::set<std::vector<long>> seen;
    std::vector<int> idx(static_cast<std::size_t>(n - 1), 0);
    for (int face = 0; face < n; ++face) {
      for (double sgn : {-1.0, 1.0}) {
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
          std::vector<long> key(static_cast<std::size_t>(n));
          Vector y(n);
          int c = 0;
          for (int r = 0; r < n; ++r) {
            if (r == face) {
              key[static_cast<std::size_t>(r)] = static_cast<long>(sgn) * k;
            } else {
              key[static_cast<std::size_t>(r)] = 2L * idx[static_cast<std::size_t>(c++)] - k;
            }
            y[r] = static_cast<double>(key[static_cast<std::size_t>(r)]) / k;
          }
          if (seen.insert(key).second) unit.push_back(y / plain_norm(y, norm));
          int pos = 0;
          while (pos < n - 1 && ++idx[static_cast<std::size_t>(pos)] > k) idx[static_cast<std::size_t>(pos++)] = 0;
          if (pos == n - 1) break;
        }
      }
    }
    out.exact = false;
    const double pp = norm.is_infinity() ? 0.0 : 1.0 / norm.p();
    out.hausdorff_bound = b.radius * 2.0 * std::pow(static_cast<double>(n - 1), pp) / k;
  }
  out.vertices.resize(n, static_cast<Eigen::Index>(unit.size()));
  for (std::size_t t = 0; t < unit.size(); ++t) {
    out.vertices.col(static_cast<Eigen::Index>(t)) = b.center + b.radius * norm.from_scaled(unit[t]);
  }
  return out;
}

}  // namespace proxpair
