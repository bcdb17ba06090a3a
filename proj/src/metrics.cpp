#include "proxpair/metrics.hpp"

#include "proxpair/error.hpp"
#include "proxpair/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace proxpair {

namespace {

double dist(const Vector& a, const Vector& b, const NormSpec& n) { return norm(Vector(a - b), n); }

// Farthest point of a ball from x.
Vector farthest_in_ball(const Vector& x, const ConvexBody::Ball& b, const NormSpec& n) {
  const Vector away = b.center - x;
  const double len = norm(away, n);
  if (len == 0.0) {
    Vector e = Vector::Zero(away.size());
    e[0] = 1.0;
    return b.center + b.radius * n.from_scaled(e);
  }
  return b.center + (b.radius / len) * away;
}

std::string describe(const Certificate& c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s stopped with gap %.3e after %d iterations", c.method.c_str(), c.gap, c.iterations);
  return buf;
}

Points screening_points(const ConvexBody& body, const NormSpec& n) { return as_polytope(body, n).vertices; }

}  // namespace

DistanceResult pair_distance(const BodyPair& pair, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("pair_distance: tol must be positive");
  solvers::ProgramOptions opts;
  opts.tol = std::min(opts.tol, tol);
  const auto sol = body_distance(pair.A, pair.B, pair.norm, opts);
  if (!sol.certificate.converged && sol.certificate.gap > tol) {
    throw SolverBudgetExhausted("pair_distance: " + describe(sol.certificate));
  }
  return {sol.value, sol.x, sol.y, sol.certificate};
}

DiameterResult diameter(const ConvexBody& H, const ConvexBody& K, const NormSpec& n, kernels::Exec exec) {
  require_same_dim(H.dim(), K.dim(), "diameter");
  DiameterResult out;
  if (H.is_polytope() && K.is_polytope()) {
    const auto best = kernels::farthest_pair(H.vertices(), K.vertices(), n, exec);
    out.delta = best.value;
    out.x = H.vertices().col(best.i);
    out.y = K.vertices().col(best.j);
    return out;
  }
  if (H.is_ball() && K.is_ball()) {
    const auto& a = H.as_ball();
    const auto& b = K.as_ball();
    out.y = farthest_in_ball(a.center, b, n);
    out.x = farthest_in_ball(out.y, a, n);
    out.delta = dist(out.x, out.y, n);
    return out;
  }
  const bool ball_first = H.is_ball();
  const auto& ball = ball_first ? H.as_ball() : K.as_ball();
  const Points& V = ball_first ? K.vertices() : H.vertices();
  Eigen::Index best = 0;
  double value = -1.0;
  for (Eigen::Index i = 0; i < V.cols(); ++i) {
    const double v = dist(V.col(i), ball.center, n);
    if (v > value) {
      value = v;
      best = i;
    }
  }
  const Vector far = farthest_in_ball(V.col(best), ball, n);
  out.x = ball_first ? far : Vector(V.col(best));
  out.y = ball_first ? Vector(V.col(best)) : far;
  out.delta = dist(out.x, out.y, n);
  return out;
}

DiameterResult pair_diameter(const BodyPair& pair, kernels::Exec exec) {
  return diameter(pair.A, pair.B, pair.norm, exec);
}

double point_radius(const Vector& x, const ConvexBody& K, const NormSpec& n, kernels::Exec exec) {
  require_same_dim(x.size(), K.dim(), "point_radius");
  if (K.is_ball()) return dist(x, K.as_ball().center, n) + K.as_ball().radius;
  return kernels::farthest_point(x, K.vertices(), n, exec).value;
}

RadiusResult restricted_radius(const ConvexBody& H, const ConvexBody& K, const NormSpec& n, double tol) {
  require_same_dim(H.dim(), K.dim(), "restricted_radius");
  solvers::ProgramOptions opts;
  opts.tol = std::min(opts.tol, tol);
  RadiusResult out;
  if (K.is_ball()) {
    // delta(x, K) = ||x - c|| + r, so the center is the projection of c onto H.
    const auto p = project(K.as_ball().center, H, n, opts);
    out.r = p.value + K.as_ball().radius;
    out.center = p.y;
    out.certificate = p.certificate;
  } else {
    const PolytopeApprox hp = as_polytope(H, n);
    const auto m = solvers::polytope_minimax(hp.vertices, K.vertices(), n, opts);
    out.r = m.value;
    out.center = m.center;
    out.certificate = m.certificate;
    out.certificate.gap += hp.hausdorff_bound;
  }
  if (!out.certificate.converged && out.certificate.gap > tol) {
    throw SolverBudgetExhausted("restricted_radius: " + describe(out.certificate));
  }
  return out;
}

std::optional<Vector> resolve_mate(const Vector& x, const ConvexBody& other, const NormSpec& n, double d, double tol,
                                   const std::optional<Vector>& shift) {
  if (shift) {
    Vector y = x + *shift;
    if (dist(x, y, n) <= d + tol && contains(other, y, n, tol)) return y;
  }
  const auto p = project(x, other, n);
  if (p.value <= d + tol) return p.y;
  return std::nullopt;
}

Vector ProximalCore::mate_in_B(const BodyPair& pair, const Vector& x) const {
  auto m = resolve_mate(x, pair.B, pair.norm, d, tol, shift);
  if (!m) throw InvalidArgument("mate: point has no mate in B within d + tol");
  return *m;
}

Vector ProximalCore::mate_in_A(const BodyPair& pair, const Vector& y) const {
  std::optional<Vector> back;
  if (shift) back = Vector(-*shift);
  auto m = resolve_mate(y, pair.A, pair.norm, d, tol, back);
  if (!m) throw InvalidArgument("mate: point has no mate in A within d + tol");
  return *m;
}

namespace {

struct SideScreen {
  std::vector<CertifiedPoint> certified;
  std::size_t candidates = 0;
  bool covers = false;
};

SideScreen screen_side(const ConvexBody& self, const ConvexBody& other, const NormSpec& n, double d,
                       const Vector& witness, const std::optional<Vector>& shift, const AnalysisOptions& o,
                       std::uint64_t seed) {
  std::vector<Vector> cands;
  const Points V = screening_points(self, n);
  for (Eigen::Index i = 0; i < V.cols(); ++i) cands.emplace_back(V.col(i));
  for (auto& s : sample(self, std::max<std::size_t>(o.budget, 1), seed, n)) cands.push_back(std::move(s));
  cands.push_back(witness);

  std::vector<std::optional<Vector>> mates(cands.size());
  kernels::for_each_index(
      cands.size(), [&](std::size_t i) { mates[i] = resolve_mate(cands[i], other, n, d, o.tol, shift); }, o.exec);

  SideScreen out;
  out.candidates = cands.size();
  out.covers = true;
  std::vector<std::size_t> failed;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (mates[i]) {
      out.certified.push_back({cands[i], *mates[i], dist(cands[i], *mates[i], n), false});
    } else {
      out.covers = false;
      failed.push_back(i);
    }
  }
  // Alternating projections from the failures converge toward a best-approximation pair.
  std::vector<std::optional<CertifiedPoint>> refined(failed.size());
  kernels::for_each_index(
      failed.size(),
      [&](std::size_t t) {
        Vector x = cands[failed[t]];
        for (int round = 0; round < 50; ++round) {
          const auto py = project(x, other, n);
          if (py.value <= d + o.tol) {
            refined[t] = CertifiedPoint{x, py.y, py.value, true};
            return;
          }
          const Vector next = project(py.y, self, n).y;
          if ((next - x).cwiseAbs().maxCoeff() < 1e-15) return;
          x = next;
        }
      },
      o.exec);
  for (auto& r : refined) {
    if (r) out.certified.push_back(std::move(*r));
  }
  return out;
}

}  // namespace

ProximalCore proximal_core(const BodyPair& pair, const AnalysisOptions& o) {
  const NormSpec& n = pair.norm;
  ProximalCore core;
  core.tol = o.tol;
  const DistanceResult dr = pair_distance(pair, o.tol);
  core.d = dr.d;
  core.x_d = dr.x;
  core.y_d = dr.y;
  if (auto t = translate_offset(pair, o.tol); t && t->norm_equals_distance) {
    core.shift = t->h;
    core.certified_exact = true;
  }
  const bool tangent_balls = pair.A.is_ball() && pair.B.is_ball() && core.d > o.tol && n.strictly_convex();

  std::optional<Vector> back;
  if (core.shift) back = Vector(-*core.shift);
  const SideScreen a = screen_side(pair.A, pair.B, n, core.d, core.x_d, core.shift, o, Rng::derive(o.seed, 1));
  const SideScreen b = screen_side(pair.B, pair.A, n, core.d, core.y_d, back, o, Rng::derive(o.seed, 2));
  core.certified_A = a.certified;
  core.certified_B = b.certified;
  core.candidates_A = a.candidates;
  core.candidates_B = b.candidates;
  core.covers_A = a.covers;
  core.covers_B = b.covers;

  auto hull_of = [](const std::vector<CertifiedPoint>& pts) {
    std::vector<Vector> xs;
    xs.reserve(pts.size());
    for (const auto& p : pts) xs.push_back(p.x);
    return convex_hull(xs);
  };
  if (tangent_balls) {
    // Strictly convex norm: the nearest points of two disjoint balls are unique.
    core.certified_exact = true;
    core.A0 = ConvexBody::point(core.x_d);
    core.B0 = ConvexBody::point(core.y_d);
    return core;
  }
  if (core.covers_A) {
    core.A0 = pair.A;
  } else if (!a.certified.empty()) {
    core.A0 = hull_of(a.certified);
  }
  if (core.covers_B) {
    core.B0 = pair.B;
  } else if (!b.certified.empty()) {
    core.B0 = hull_of(b.certified);
  }
  return core;
}

std::string to_string(SemisharpVerdict::Status status) {
  switch (status) {
    case SemisharpVerdict::Status::holds_analytic:
      return "holds (analytic)";
    case SemisharpVerdict::Status::holds_sampled:
      return "holds (sampled)";
    case SemisharpVerdict::Status::fails:
      return "fails";
  }
  return "unknown";
}

namespace {

// Two points of conv(V) within d + tol of x that are more than 10 tol apart.
std::optional<std::pair<Vector, Vector>> two_mates(const Vector& x, const Points& V, const NormSpec& n, double d,
                                                   double tol) {
  const double sep = 10.0 * tol;
  std::vector<Eigen::Index> near;
  for (Eigen::Index i = 0; i < V.cols(); ++i) {
    if (dist(x, V.col(i), n) <= d + tol) near.push_back(i);
  }
  for (std::size_t a = 0; a < near.size(); ++a) {
    for (std::size_t b = a + 1; b < near.size(); ++b) {
      if (dist(V.col(near[a]), V.col(near[b]), n) > sep) return std::pair<Vector, Vector>(V.col(near[a]), V.col(near[b]));
    }
  }
  if (!n.is_polyhedral() || V.cols() < 2) return std::nullopt;
  for (Eigen::Index r = 0; r < x.size(); ++r) {
    Vector e = Vector::Zero(x.size());
    e[r] = 1.0;
    const auto hi = solvers::extreme_point_within(x, V, d + 0.5 * tol, e, n);
    const auto lo = solvers::extreme_point_within(x, V, d + 0.5 * tol, Vector(-e), n);
    if (hi && lo && dist(*hi, *lo, n) > sep && dist(x, *hi, n) <= d + tol && dist(x, *lo, n) <= d + tol) {
      return std::pair<Vector, Vector>(*lo, *hi);
    }
  }
  return std::nullopt;
}

std::optional<MateWitness> search_side(const std::vector<CertifiedPoint>& points, const ConvexBody& other,
                                       const NormSpec& n, double d, double tol, std::size_t budget, bool x_in_A,
                                       std::size_t& searched) {
  const Points V = as_polytope(other, n).vertices;
  const std::size_t limit = std::min(points.size(), budget);
  for (std::size_t i = 0; i < limit; ++i) {
    ++searched;
    const Vector& x = points[i].x;
    if (auto m = two_mates(x, V, n, d, tol)) {
      MateWitness w{x, m->first, m->second, x_in_A, dist(x, m->first, n), dist(x, m->second, n),
                    dist(m->first, m->second, n)};
      if (w.dxy <= d + tol && w.dxz <= d + tol && w.dyz > 10.0 * tol) return w;
    }
  }
  return std::nullopt;
}

}  // namespace

SemisharpVerdict semisharp_check(const BodyPair& pair, const ProximalCore& core, const AnalysisOptions& o) {
  SemisharpVerdict v;
  if (pair.norm.strictly_convex()) {
    v.status = SemisharpVerdict::Status::holds_analytic;
    v.basis = "strictly convex norm";
    return v;
  }
  if (pair.A.is_singleton() && pair.B.is_singleton()) {
    v.status = SemisharpVerdict::Status::holds_analytic;
    v.basis = "singleton sets";
    return v;
  }
  const std::size_t budget = std::max<std::size_t>(o.budget, 1);
  if (auto w = search_side(core.certified_A, pair.B, pair.norm, core.d, o.tol, budget, true, v.points_searched)) {
    v.status = SemisharpVerdict::Status::fails;
    v.witness = w;
  } else if (auto w2 =
                 search_side(core.certified_B, pair.A, pair.norm, core.d, o.tol, budget, false, v.points_searched)) {
    v.status = SemisharpVerdict::Status::fails;
    v.witness = w2;
  } else {
    v.status = SemisharpVerdict::Status::holds_sampled;
  }
  v.basis = "mate search over " + std::to_string(v.points_searched) + " certified points";
  return v;
}

std::optional<MateWitness> property_uc_falsify(const BodyPair& pair, const ProximalCore& core,
                                               const AnalysisOptions& o) {
  if (pair.norm.strictly_convex()) return std::nullopt;
  const std::size_t budget = std::max<std::size_t>(o.budget, 1);
  std::size_t searched = 0;
  if (auto w = search_side(core.certified_B, pair.A, pair.norm, core.d, o.tol, budget, false, searched)) return w;
  return search_side(core.certified_A, pair.B, pair.norm, core.d, o.tol, budget, true, searched);
}

double pythagorean_residual(const BodyPair& pair, const Vector& x, const Vector& y, const ProximalCore& core) {
  const NormSpec& n = pair.norm;
  const Vector xp = core.mate_in_B(pair, x);
  const Vector yp = core.mate_in_A(pair, y);
  const double xy = std::pow(dist(x, y, n), 2);
  const double first = std::abs(std::pow(dist(x, yp, n), 2) + std::pow(dist(x, xp, n), 2) - xy);
  const double second = std::abs(std::pow(dist(xp, y, n), 2) + std::pow(dist(yp, y, n), 2) - xy);
  return std::max(first, second);
}

PairMetrics pair_metrics(const BodyPair& pair, const ProximalCore& core, const SemisharpVerdict& semisharp,
                         const AnalysisOptions& o) {
  PairMetrics m;
  m.tol = o.tol;
  const DistanceResult dr = pair_distance(pair, o.tol);
  m.d = dr.d;
  m.x_d = dr.x;
  m.y_d = dr.y;
  m.d_certificate = dr.certificate;
  const DiameterResult dm = pair_diameter(pair, o.exec);
  m.delta = dm.delta;
  m.x_delta = dm.x;
  m.y_delta = dm.y;
  const RadiusResult r12 = restricted_radius(pair.A, pair.B, pair.norm, o.tol);
  const RadiusResult r21 = restricted_radius(pair.B, pair.A, pair.norm, o.tol);
  m.r12 = r12.r;
  m.r21 = r21.r;
  m.center12 = r12.center;
  m.center21 = r21.center;
  m.r12_certificate = r12.certificate;
  m.r21_certificate = r21.certificate;
  m.Rmax = std::max(m.r12, m.r21);
  m.proximal = core.covers_A && core.covers_B;
  m.semisharp = semisharp.status != SemisharpVerdict::Status::fails;
  m.sharp = m.proximal && m.semisharp;
  if (m.sharp && core.shift) m.parallel_h = core.shift;
  return m;
}

}  // namespace proxpair
