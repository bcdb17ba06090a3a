#include "proxpair/structure.hpp"

#include "proxpair/error.hpp"
#include "proxpair/rng.hpp"

#include <algorithm>
#include <cmath>

namespace proxpair {

namespace {

bool verify_proximal(const ConvexBody& H1, const ConvexBody& H2, const NormSpec& n, double d, double tol,
                     const std::optional<Vector>& shift) {
  std::optional<Vector> back;
  if (shift) back = Vector(-*shift);
  const Points V1 = as_polytope(H1, n).vertices;
  const Points V2 = as_polytope(H2, n).vertices;
  for (Eigen::Index i = 0; i < V1.cols(); ++i) {
    if (!resolve_mate(V1.col(i), H2, n, d, tol, shift)) return false;
  }
  for (Eigen::Index i = 0; i < V2.cols(); ++i) {
    if (!resolve_mate(V2.col(i), H1, n, d, tol, back)) return false;
  }
  return true;
}

SubPair make_subpair(ConvexBody H1, ConvexBody H2, const NormSpec& n, double d, double tol,
                     const std::optional<Vector>& shift) {
  SubPair sp{std::move(H1), std::move(H2)};
  sp.nondegenerate = !(sp.H1.is_singleton(tol) && sp.H2.is_singleton(tol));
  sp.d_matches = std::abs(body_distance(sp.H1, sp.H2, n).value - d) <= tol;
  sp.proximal = sp.d_matches && verify_proximal(sp.H1, sp.H2, n, d, tol, shift);
  return sp;
}

double shrink_factor(Rng& rng) { return std::pow(10.0, -3.0 * rng.uniform()); }

std::optional<SubPair> proximal_member(const BodyPair& pair, const ProximalCore& core, std::uint64_t seed,
                                       std::size_t i, double tol) {
  const auto& pool = core.certified_A;
  if (pool.empty()) return std::nullopt;
  Rng rng(seed, i);
  const Vector anchor = pool[rng.index(pool.size())].x;
  const std::size_t k = 1 + rng.index(3);
  const double s = shrink_factor(rng);
  std::vector<Vector> pts{anchor};
  for (std::size_t t = 0; t < k; ++t) pts.emplace_back(anchor + s * (pool[rng.index(pool.size())].x - anchor));
  std::vector<Vector> mates;
  try {
    for (const auto& p : pts) mates.push_back(core.mate_in_B(pair, p));
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
  return make_subpair(convex_hull(pts), convex_hull(mates), pair.norm, core.d, tol, core.shift);
}

std::optional<SubPair> matching_member(const BodyPair& pair, const ProximalCore& core, std::uint64_t seed,
                                       std::size_t i, double tol) {
  Rng rng(seed, i);
  std::size_t ka = rng.index(4);
  std::size_t kb = rng.index(4);
  if (ka + kb == 0) ka = 1;
  const double sa = shrink_factor(rng);
  const double sb = shrink_factor(rng);
  std::vector<Vector> a{core.x_d};
  std::vector<Vector> b{core.y_d};
  if (ka > 0) {
    for (const auto& p : sample(pair.A, ka, Rng::derive(seed, 2 * i), pair.norm)) a.emplace_back(core.x_d + sa * (p - core.x_d));
  }
  if (kb > 0) {
    for (const auto& p : sample(pair.B, kb, Rng::derive(seed, 2 * i + 1), pair.norm)) b.emplace_back(core.y_d + sb * (p - core.y_d));
  }
  return make_subpair(convex_hull(a), convex_hull(b), pair.norm, core.d, tol, core.shift);
}

double euclid_bound(double self_diameter, double d) {
  const double s2 = self_diameter * self_diameter;
  return std::sqrt((0.5 * s2 + d * d) / (s2 + d * d));
}

}  // namespace

std::vector<SubPair> subpair_sampler(const BodyPair& pair, const ProximalCore& core, std::size_t count,
                                     std::uint64_t seed, SubPairFamily family, double tol) {
  std::vector<std::optional<SubPair>> slots(count);
  kernels::for_each_index(count, [&](std::size_t i) {
    if (i == 0) {
      SubPair full = make_subpair(pair.A, pair.B, pair.norm, core.d, tol, core.shift);
      if (family == SubPairFamily::matching || full.proximal) slots[0] = std::move(full);
      return;
    }
    slots[i] = family == SubPairFamily::proximal ? proximal_member(pair, core, seed, i, tol)
                                                 : matching_member(pair, core, seed, i, tol);
  });
  std::vector<SubPair> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

RatioSample subpair_ratio(const SubPair& sp, double d, const NormSpec& n, double tol) {
  RatioSample r;
  r.delta = diameter(sp.H1, sp.H2, n, kernels::Exec::serial).delta;
  const double r12 = restricted_radius(sp.H1, sp.H2, n, tol).r;
  const double r21 = restricted_radius(sp.H2, sp.H1, n, tol).r;
  r.R = std::max(r12, r21);
  r.ratio = r.delta > 0.0 ? r.R / r.delta : 0.0;
  r.self_diameter = diameter(sp.H1, sp.H1, n, kernels::Exec::serial).delta;
  if (n.is_l2() && sp.proximal && (r.self_diameter > 0.0 || d > 0.0)) {
    r.hilbert_bound = euclid_bound(r.self_diameter, d);
    const Points V = as_polytope(sp.H1, n).vertices;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < V.cols(); ++i) {
      const double far2 = std::pow(point_radius(V.col(i), sp.H2, n), 2);
      const double self2 = std::pow(point_radius(V.col(i), sp.H1, n), 2);
      worst = std::max(worst, std::abs(far2 - self2 - d * d));
    }
    r.decomposition_residual = worst;
  }
  return r;
}

namespace {

std::vector<RatioSample> ratios(const std::vector<SubPair>& subs, double d, const NormSpec& n, double tol,
                                kernels::Exec exec) {
  std::vector<RatioSample> out(subs.size());
  kernels::for_each_index(subs.size(), [&](std::size_t i) { out[i] = subpair_ratio(subs[i], d, n, tol); }, exec);
  return out;
}

ProximalCore witness_core(const BodyPair& pair, double tol) {
  ProximalCore core;
  const DistanceResult dr = pair_distance(pair, tol);
  core.d = dr.d;
  core.x_d = dr.x;
  core.y_d = dr.y;
  core.tol = tol;
  if (auto t = translate_offset(pair, tol); t && t->norm_equals_distance) core.shift = t->h;
  return core;
}

double matching_max(const BodyPair& pair, const ProximalCore& core, std::size_t count, std::uint64_t seed, double tol,
                    kernels::Exec exec, std::size_t& used) {
  std::vector<SubPair> subs = subpair_sampler(pair, core, count, seed, SubPairFamily::matching, tol);
  std::erase_if(subs, [](const SubPair& s) { return !(s.d_matches && s.nondegenerate); });
  used = subs.size();
  double best = 0.0;
  for (const auto& r : ratios(subs, core.d, pair.norm, tol, exec)) best = std::max(best, r.ratio);
  return best;
}

}  // namespace

StructureEstimate estimate_N(const BodyPair& pair, const ProximalCore& core, std::size_t count, std::uint64_t seed,
                             double tol, kernels::Exec exec) {
  StructureEstimate est;
  est.seed = seed;
  est.basis = core.covers_A && core.covers_B ? "(A,B)" : "(A0,B0)";
  std::vector<SubPair> subs = subpair_sampler(pair, core, count, seed, SubPairFamily::proximal, tol);
  std::erase_if(subs, [](const SubPair& s) { return !(s.proximal && s.d_matches && s.nondegenerate); });
  if (subs.empty()) throw InvalidArgument("estimate_N: no nondegenerate proximal sub-pairs (degenerate pair)");
  est.samples = subs.size();
  for (const auto& r : ratios(subs, core.d, pair.norm, tol, exec)) {
    est.N_hat = std::max(est.N_hat, r.ratio);
    if (r.hilbert_bound) {
      est.hilbert_bound = std::max(est.hilbert_bound.value_or(0.0), *r.hilbert_bound);
      const double excess = r.ratio - *r.hilbert_bound;
      est.hilbert_excess = est.hilbert_excess ? std::max(*est.hilbert_excess, excess) : excess;
    }
    if (r.decomposition_residual) {
      est.decomposition_residual = std::max(est.decomposition_residual.value_or(0.0), *r.decomposition_residual);
    }
  }
  // Proximal members are distance-matching members too.
  const double c0 = matching_max(pair, core, count, Rng::derive(seed, 7), tol, exec, est.samples_matching);
  est.c0_hat = std::max(c0, est.N_hat);
  est.uniform_normal_structure =
      est.N_hat <= 1.0 - kStructureMargin && (!est.hilbert_bound || *est.hilbert_bound < 1.0);
  return est;
}

double estimate_c0(const BodyPair& pair, std::size_t count, std::uint64_t seed, double tol, kernels::Exec exec) {
  std::size_t used = 0;
  const double best = matching_max(pair, witness_core(pair, tol), count, seed, tol, exec, used);
  if (used == 0) throw InvalidArgument("estimate_c0: no nondegenerate sub-pairs (degenerate pair)");
  return best;
}

namespace {

std::vector<Vector> center_side(const ConvexBody& C, const ConvexBody& other, const NormSpec& n, double d,
                                double threshold, std::size_t count, std::uint64_t seed, double tol) {
  auto member = [&](const Vector& x) { return point_radius(x, other, n) - d <= threshold; };
  std::vector<Vector> out;
  const Vector center = restricted_radius(C, other, n, tol).center;
  if (!member(center)) return out;
  out.push_back(center);
  std::vector<Vector> targets;
  const Points V = as_polytope(C, n).vertices;
  for (Eigen::Index i = 0; i < V.cols(); ++i) targets.emplace_back(V.col(i));
  for (auto& s : sample(C, std::max<std::size_t>(count, 1), seed, n)) targets.push_back(std::move(s));
  for (const auto& p : targets) {
    if (member(p)) {
      out.push_back(p);
      continue;
    }
    // Membership along the ray is an interval [0, t*]: the defining function is convex.
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (member(Vector(center + mid * (p - center)))) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    if (lo > 0.0) out.emplace_back(center + lo * (p - center));
  }
  return out;
}

}  // namespace

CenterSets fact41_centers(const ConvexBody& C1, const ConvexBody& C2, const NormSpec& n, double c,
                          std::optional<double> d, std::size_t count, std::uint64_t seed, double tol) {
  if (!(c > 0.0) || !(c <= 1.0)) throw InvalidArgument("fact41_centers: c must lie in (0, 1]");
  CenterSets out;
  out.c = c;
  out.d = d ? *d : body_distance(C1, C2, n).value;
  out.gap = diameter(C1, C2, n, kernels::Exec::serial).delta - out.d;
  const double threshold = c * out.gap;
  out.in_C1 = center_side(C1, C2, n, out.d, threshold, count, Rng::derive(seed, 1), tol);
  out.in_C2 = center_side(C2, C1, n, out.d, threshold, count, Rng::derive(seed, 2), tol);
  return out;
}

ShrinkTrace nested_hull_demo(const BodyPair& pair, const ProximalCore& core, int levels, double c, std::uint64_t seed,
                             double tol) {
  if (levels < 1) throw InvalidArgument("nested_hull_demo: levels must be >= 1");
  if (!(c > 0.0) || !(c < 1.0)) throw InvalidArgument("nested_hull_demo: c must lie in (0, 1)");
  const NormSpec& n = pair.norm;
  const double d = core.d;
  const Vector xs = core.x_d;
  const Vector ys = core.y_d;
  const Vector xt = sample(pair.A, 1, Rng::derive(seed, 11), n).front();
  const Vector yt = sample(pair.B, 1, Rng::derive(seed, 12), n).front();
  const int W = levels + kNestedTail;
  // x_n = (1 - 2^-n) x* + 2^-n x~ lies on a segment ending at x*, so each tail
  // hull co{x_n, x_{n+1}, ..., x*} is the segment [x_n, x*].
  std::vector<ConvexBody> H;
  std::vector<ConvexBody> K;
  for (int j = 1; j <= W; ++j) {
    const double w = std::ldexp(1.0, -j);
    H.push_back(convex_hull(std::vector<Vector>{Vector((1.0 - w) * xs + w * xt), xs}));
    K.push_back(convex_hull(std::vector<Vector>{Vector((1.0 - w) * ys + w * yt), ys}));
  }
  ShrinkTrace trace;
  trace.c_used = c;
  double g0 = 0.0;
  double prev = 0.0;
  for (int m = 0; m < levels; ++m) {
    TraceLevel lv;
    lv.level = m;
    if (m > 0) {
      std::vector<std::vector<Vector>> a(static_cast<std::size_t>(W));
      std::vector<std::vector<Vector>> b(static_cast<std::size_t>(W));
      kernels::for_each_index(static_cast<std::size_t>(W), [&](std::size_t j) {
        const CenterSets cs = fact41_centers(H[j], K[j], n, c, d, 16, Rng::derive(seed, 100 * m + j), tol);
        a[j] = cs.in_C1;
        b[j] = cs.in_C2;
      });
      std::vector<ConvexBody> H2;
      std::vector<ConvexBody> K2;
      std::vector<Vector> ua;
      std::vector<Vector> ub;
      bool empty = false;
      for (int j = W - 1; j >= 0; --j) {
        const auto& aj = a[static_cast<std::size_t>(j)];
        const auto& bj = b[static_cast<std::size_t>(j)];
        ua.insert(ua.end(), aj.begin(), aj.end());
        ub.insert(ub.end(), bj.begin(), bj.end());
        if (ua.empty() || ub.empty()) {
          if (j == 0) empty = true;
          continue;
        }
        const Points hv = hull_vertices(ConvexBody::polytope(ua).vertices());
        const Points kv = hull_vertices(ConvexBody::polytope(ub).vertices());
        ua.assign(hv.colwise().begin(), hv.colwise().end());
        ub.assign(kv.colwise().begin(), kv.colwise().end());
        H2.push_back(ConvexBody::polytope(hv));
        K2.push_back(ConvexBody::polytope(kv));
      }
      if (empty) {
        lv.ok = false;
        lv.note = "empty center set at level " + std::to_string(m);
        trace.levels.push_back(lv);
        trace.outcome = "empty center set";
        return trace;
      }
      std::reverse(H2.begin(), H2.end());
      std::reverse(K2.begin(), K2.end());
      H = std::move(H2);
      K = std::move(K2);
    }
    lv.delta = diameter(H.front(), K.front(), n, kernels::Exec::serial).delta;
    lv.d = body_distance(H.front(), K.front(), n).value;
    lv.gap = lv.delta - d;
    if (m == 0) g0 = lv.gap;
    lv.bound = std::pow(c, m) * g0;
    if (m > 0 && lv.gap > c * prev + 1e-9) {
      lv.ok = false;
      lv.note = "gap exceeds c times previous gap";
    }
    prev = lv.gap;
    lv.snapshot = std::make_pair(H.front(), K.front());
    if (lv.gap <= tol) {
      if (H.front().is_singleton(tol) && K.front().is_singleton(tol)) {
        lv.note = "singleton pair";
        trace.converged = true;
        trace.outcome = "singleton";
      } else {
        const double R = std::max(restricted_radius(H.front(), K.front(), n, tol).r,
                                  restricted_radius(K.front(), H.front(), n, tol).r);
        const double ratio = R / lv.delta;
        if (ratio > c) {
          lv.ok = false;
          lv.note = "zero gap on a non-singleton pair: R/delta = " + std::to_string(ratio) + " > c";
        }
        trace.outcome = "zero gap";
      }
      trace.levels.push_back(std::move(lv));
      return trace;
    }
    trace.levels.push_back(std::move(lv));
  }
  trace.outcome = "levels completed";
  return trace;
}

}  // namespace proxpair
