#include "proxpair/bpp.hpp"

#include "proxpair/error.hpp"
#include "proxpair/rng.hpp"
#include "proxpair/structure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace proxpair {

namespace {

double dist(const Vector& a, const Vector& b, const NormSpec& n) { return proxpair::norm(Vector(a - b), n); }

std::string fmt_point(const Vector& v) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

void check_shape(const AffineMap& m, int dim, const char* which) {
  if (m.matrix.rows() != dim || m.matrix.cols() != dim) {
    throw DimensionMismatch(std::string(which) + ": matrix must be " + std::to_string(dim) + "x" +
                            std::to_string(dim));
  }
  require_same_dim(m.offset.size(), dim, which);
}

Eigen::VectorXd weight_vector(const NormSpec& n) {
  Eigen::VectorXd w(n.dim());
  for (int i = 0; i < n.dim(); ++i) w[i] = n.weight(i);
  return w;
}

// W M W^-1 with W the weight diagonal.
Eigen::MatrixXd scaled_linear_part(const Eigen::MatrixXd& M, const NormSpec& n) {
  const Eigen::VectorXd w = weight_vector(n);
  return w.asDiagonal() * M * w.cwiseInverse().asDiagonal();
}

bool norm_preserving(const Eigen::MatrixXd& M, const NormSpec& n) {
  constexpr double eps = 1e-12;
  const Eigen::MatrixXd Q = scaled_linear_part(M, n);
  if (n.is_l2()) {
    return (Q.transpose() * Q - Eigen::MatrixXd::Identity(Q.rows(), Q.cols())).cwiseAbs().maxCoeff() <= eps;
  }
  // Away from p = 2 the linear isometries are the signed permutations.
  for (Eigen::Index i = 0; i < Q.rows(); ++i) {
    int row_hits = 0;
    int col_hits = 0;
    for (Eigen::Index j = 0; j < Q.cols(); ++j) {
      const double a = std::abs(Q(i, j));
      const double b = std::abs(Q(j, i));
      if (a > eps) {
        if (std::abs(a - 1.0) > eps) return false;
        ++row_hits;
      }
      if (b > eps) ++col_hits;
    }
    if (row_hits != 1 || col_hits != 1) return false;
  }
  return true;
}

std::vector<Vector> check_points(const ConvexBody& body, const NormSpec& n, std::size_t budget, std::uint64_t seed) {
  std::vector<Vector> out;
  const Points V = as_polytope(body, n).vertices;
  for (Eigen::Index i = 0; i < V.cols(); ++i) out.emplace_back(V.col(i));
  for (auto& s : sample(body, budget, seed, n)) out.push_back(std::move(s));
  return out;
}

void check_cyclic(const CyclicMapSpec& T, const BodyPair& pair, std::size_t budget, std::uint64_t seed, double tol,
                  std::size_t& checked) {
  const auto side = [&](const ConvexBody& from, const ConvexBody& to, const AffineMap& m, const char* label,
                        std::uint64_t tag) {
    const auto pts = check_points(from, pair.norm, budget, Rng::derive(seed, tag));
    std::vector<char> inside(pts.size(), 0);
    kernels::for_each_index(pts.size(), [&](std::size_t i) { inside[i] = contains(to, m(pts[i]), pair.norm, tol); });
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!inside[i]) {
        throw CyclicityFailure(std::string("map is not cyclic: ") + label + " sends " + fmt_point(pts[i]) + " to " +
                               fmt_point(m(pts[i])));
      }
    }
    checked += pts.size();
  };
  side(pair.A, pair.B, T.T_AB, "T_AB", 21);
  side(pair.B, pair.A, T.T_BA, "T_BA", 22);
}

struct Audit {
  double worst = 0.0;
  std::size_t samples = 0;
  std::optional<NonexpansiveViolation> violation;
};

bool violates(double before, double after) { return after > before + 1e-12 * (1.0 + before); }

Audit audit(const CyclicMapSpec& T, const BodyPair& pair, std::size_t budget, std::uint64_t seed) {
  const auto& n = pair.norm;
  const Points VA = as_polytope(pair.A, n).vertices;
  const Points VB = as_polytope(pair.B, n).vertices;
  std::vector<std::pair<Vector, Vector>> cross;
  for (Eigen::Index i = 0; i < VA.cols() && cross.size() < 4 * budget; ++i) {
    for (Eigen::Index j = 0; j < VB.cols() && cross.size() < 4 * budget; ++j) cross.emplace_back(VA.col(i), VB.col(j));
  }
  const auto sa = sample(pair.A, budget, Rng::derive(seed, 23), n);
  const auto sb = sample(pair.B, budget, Rng::derive(seed, 24), n);
  for (std::size_t k = 0; k < budget; ++k) cross.emplace_back(sa[k], sb[k]);

  std::vector<double> before(cross.size());
  std::vector<double> after(cross.size());
  kernels::for_each_index(cross.size(), [&](std::size_t k) {
    before[k] = dist(cross[k].first, cross[k].second, n);
    after[k] = dist(T.T_AB(cross[k].first), T.T_BA(cross[k].second), n);
  });
  Audit out;
  out.samples = cross.size();
  for (std::size_t k = 0; k < cross.size(); ++k) {
    const double ratio = before[k] > 0.0 ? after[k] / before[k] : (after[k] > 0.0 ? INFINITY : 1.0);
    out.worst = std::max(out.worst, ratio);
    if (!out.violation && violates(before[k], after[k])) {
      out.violation = NonexpansiveViolation{cross[k].first, cross[k].second, before[k], after[k]};
    }
  }
  return out;
}

}  // namespace

std::string to_string(CyclicMapSpec::Mode mode) { return mode == CyclicMapSpec::Mode::isometry ? "isometry" : "audit"; }

CyclicMapSpec::Mode parse_map_mode(const std::string& text) {
  if (text == "isometry") return CyclicMapSpec::Mode::isometry;
  if (text == "audit") return CyclicMapSpec::Mode::audit;
  throw InvalidArgument("unknown map mode '" + text + "' (expected isometry or audit)");
}

NonexpansiveCertificate check_relatively_nonexpansive(const CyclicMapSpec& T, const BodyPair& pair,
                                                      std::size_t budget, std::uint64_t seed, double tol) {
  const auto& n = pair.norm;
  check_shape(T.T_AB, n.dim(), "T_AB");
  check_shape(T.T_BA, n.dim(), "T_BA");
  budget = std::max<std::size_t>(budget, 1);

  NonexpansiveCertificate out;
  check_cyclic(T, pair, budget, seed, tol, out.cyclicity_points);

  const Audit sampled = audit(T, pair, budget, seed);
  out.worst_ratio = sampled.worst;
  out.samples = sampled.samples;

  const auto& M = T.T_AB.matrix;
  const bool shared = (M - T.T_BA.matrix).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + M.cwiseAbs().maxCoeff());
  if (T.mode == CyclicMapSpec::Mode::isometry && shared && norm_preserving(M, n)) {
    const Vector c = T.T_AB.offset - T.T_BA.offset;
    const double scale = 1.0 + T.T_AB.offset.cwiseAbs().maxCoeff() + T.T_BA.offset.cwiseAbs().maxCoeff();
    if (c.cwiseAbs().maxCoeff() <= 1e-12 * scale) {
      out.analytic = true;
      out.holds = true;
      out.basis = "isometry: shared norm-preserving linear part, equal offsets";
      return out;
    }
    if (n.is_l2()) {
      const Eigen::VectorXd w = weight_vector(n);
      const Vector wc = w.cwiseProduct(c);
      const Vector g = M.transpose() * w.cwiseProduct(wc);
      const auto sa = support(pair.A, g, n);
      const auto sb = support(pair.B, Vector(-g), n);
      const double worst = wc.squaredNorm() + 2.0 * (sa.value + sb.value);
      out.analytic = true;
      if (worst <= 1e-12 * (1.0 + wc.squaredNorm())) {
        out.holds = true;
        out.basis = "isometry: Euclidean offset condition holds on the difference set";
        return out;
      }
      const double before = dist(sa.argpoint, sb.argpoint, n);
      const double after = dist(T.T_AB(sa.argpoint), T.T_BA(sb.argpoint), n);
      if (violates(before, after)) {
        out.violation = NonexpansiveViolation{sa.argpoint, sb.argpoint, before, after};
        out.holds = false;
        out.basis = "isometry: Euclidean offset condition fails";
        return out;
      }
      out.analytic = false;
    }
  }

  out.holds = !sampled.violation.has_value();
  out.violation = sampled.violation;
  out.basis = T.mode == CyclicMapSpec::Mode::isometry ? "audit: isometry structure not recognised, sampled cross pairs"
                                                      : "audit: sampled cross pairs";
  return out;
}

MidpointResult midpoint_refine(const ConvexBody& H, const ConvexBody& K, const Vector& u, const Vector& v,
                               const NormSpec& norm, double d, double tol, const std::optional<Vector>& shift) {
  std::optional<Vector> back;
  if (shift) back = Vector(-*shift);
  const auto u_mate = resolve_mate(u, K, norm, d, tol, shift);
  const auto v_mate = resolve_mate(v, H, norm, d, tol, back);
  if (!u_mate) throw InvalidArgument("midpoint_refine: u " + fmt_point(u) + " has no mate in K");
  if (!v_mate) throw InvalidArgument("midpoint_refine: v " + fmt_point(v) + " has no mate in H");
  MidpointResult out;
  out.z1 = 0.5 * (u + *v_mate);
  out.z2 = 0.5 * (*u_mate + v);
  out.distance = dist(out.z1, out.z2, norm);
  if (std::abs(out.distance - d) > tol) {
    throw CertificateFailure("midpoint_refine: ||z1 - z2|| = " + std::to_string(out.distance) + " differs from d = " +
                             std::to_string(d));
  }
  out.radius1 = point_radius(out.z1, K, norm);
  out.radius2 = point_radius(out.z2, H, norm);
  return out;
}

double contraction_target(double N_hat) {
  return std::min(std::max((3.0 + N_hat) / 4.0, 0.75) + kStructureMargin, kContractionCap);
}

ShrinkResult shrink_step(const ConvexBody& H, const ConvexBody& K, const CyclicMapSpec& T, const NormSpec& norm,
                         double d, double c, const ShrinkOptions& options) {
  const double tol = options.tol;
  ShrinkCertificate cert;
  if (H.is_singleton(tol) && K.is_singleton(tol)) {
    cert.d_after = d;
    cert.invariance_ok = cert.gap_ok = cert.distance_ok = true;
    return {H, K, cert};
  }
  cert.gap_before = diameter(H, K, norm).delta - d;
  const Vector u = restricted_radius(H, K, norm, tol).center;
  const Vector v = restricted_radius(K, H, norm, tol).center;
  cert.midpoints = midpoint_refine(H, K, u, v, norm, d, tol);

  // Pair orbit of (z1, z2): (a, b) -> (T b, T a) keeps ||a - b|| <= d.
  std::vector<Vector> side_a{cert.midpoints.z1};
  std::vector<Vector> side_b{cert.midpoints.z2};
  const auto known = [&](const Vector& a, const Vector& b) {
    for (std::size_t k = 0; k < side_a.size(); ++k) {
      if ((side_a[k] - a).cwiseAbs().maxCoeff() <= tol && (side_b[k] - b).cwiseAbs().maxCoeff() <= tol) return true;
    }
    return false;
  };
  std::size_t frontier = 0;
  while (frontier < side_a.size()) {
    const std::size_t end = side_a.size();
    ++cert.orbit_rounds;
    for (std::size_t k = frontier; k < end; ++k) {
      Vector a = T.T_BA(side_b[k]);
      Vector b = T.T_AB(side_a[k]);
      if (known(a, b)) continue;
      if (side_a.size() >= std::max<std::size_t>(options.budget, 1)) {
        throw SolverBudgetExhausted("shrink_step: orbit hull still growing after " + std::to_string(side_a.size()) +
                                    " points");
      }
      side_a.push_back(std::move(a));
      side_b.push_back(std::move(b));
    }
    frontier = end;
  }
  cert.orbit_points = side_a.size();

  ShrinkResult out{convex_hull(side_a), convex_hull(side_b), cert};
  auto& oc = out.certificate;
  const double bound = c * oc.gap_before + 1e-9;
  for (std::size_t k = 0; k < side_a.size(); ++k) {
    const double ga = point_radius(side_a[k], out.K1, norm) - d;
    const double gb = point_radius(side_b[k], out.H1, norm) - d;
    if (std::max(ga, gb) > bound) {
      throw CertificateFailure("shrink_step: orbit point " + fmt_point(side_a[k]) + " has radius gap " +
                               std::to_string(std::max(ga, gb)) + " above c * gap = " + std::to_string(bound));
    }
  }
  oc.gap_after = diameter(out.H1, out.K1, norm).delta - d;
  oc.gap_ok = oc.gap_after <= bound;
  oc.d_after = body_distance(out.H1, out.K1, norm).value;
  oc.distance_ok = std::abs(oc.d_after - d) <= tol;
  oc.invariance_ok = true;
  const Points& VH = out.H1.vertices();
  const Points& VK = out.K1.vertices();
  for (Eigen::Index i = 0; i < VH.cols() && oc.invariance_ok; ++i) {
    oc.invariance_ok = contains(out.K1, T.T_AB(Vector(VH.col(i))), norm, tol);
  }
  for (Eigen::Index i = 0; i < VK.cols() && oc.invariance_ok; ++i) {
    oc.invariance_ok = contains(out.H1, T.T_BA(Vector(VK.col(i))), norm, tol);
  }
  if (!oc.gap_ok) {
    throw CertificateFailure("shrink_step: gap " + std::to_string(oc.gap_after) + " exceeds c * gap = " +
                             std::to_string(bound));
  }
  if (!oc.invariance_ok) throw CertificateFailure("shrink_step: shrunk pair is not T-invariant");
  if (!oc.distance_ok) {
    throw CertificateFailure("shrink_step: distance moved to " + std::to_string(oc.d_after) + " from " +
                             std::to_string(d));
  }
  return out;
}

BppResult solve_bpp(const BodyPair& pair, const CyclicMapSpec& T, const BppOptions& options) {
  const auto& n = pair.norm;
  const double tol = options.tol;
  BppResult out;
  out.map_certificate = check_relatively_nonexpansive(T, pair, options.budget, options.seed, tol);
  if (!out.map_certificate.holds) {
    const auto& v = *out.map_certificate.violation;
    throw CertificateFailure("map is not relatively nonexpansive: x = " + fmt_point(v.x) + ", y = " + fmt_point(v.y) +
                             ", ||Tx - Ty|| = " + std::to_string(v.after) + " > " + std::to_string(v.before));
  }

  AnalysisOptions ao{tol, options.budget, options.seed, options.exec};
  const ProximalCore core = proximal_core(pair, ao);
  ConvexBody H = pair.A;
  ConvexBody K = pair.B;
  if (!(core.covers_A && core.covers_B)) {
    if (!core.detected()) throw CertificateFailure("solve_bpp: no proximal points found");
    H = *core.A0;
    K = *core.B0;
    out.reduced = true;
  }
  out.d = core.d;

  double c = 0.0;
  if (options.c) {
    c = *options.c;
    if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("solve_bpp: c must lie in (0, 1)");
  } else {
    const BodyPair base(H, K, n);
    const ProximalCore base_core = out.reduced ? proximal_core(base, ao) : core;
    out.N_hat = estimate_N(base, base_core, options.budget, Rng::derive(options.seed, 31), tol, options.exec).N_hat;
    c = contraction_target(out.N_hat);
  }

  auto& trace = out.trace;
  trace.c_used = c;
  const double delta0 = diameter(H, K, n).delta;
  const double gap0 = delta0 - out.d;
  trace.levels.push_back(TraceLevel{0, delta0, out.d, gap0, gap0, true, "", std::make_pair(H, K)});

  double gap = gap0;
  bool aborted = false;
  for (int level = 1; level <= options.max_iter && gap > tol; ++level) {
    TraceLevel entry;
    entry.level = level;
    entry.bound = std::pow(c, level) * gap0;
    try {
      ShrinkResult step = shrink_step(H, K, T, n, out.d, c, ShrinkOptions{tol, options.budget});
      H = std::move(step.H1);
      K = std::move(step.K1);
      entry.d = step.certificate.d_after;
      entry.gap = step.certificate.gap_after;
      entry.delta = entry.gap + out.d;
      entry.ok = entry.gap <= entry.bound + 1e-9;
      entry.snapshot = std::make_pair(H, K);
      if (!entry.ok) entry.note = "gap above the geometric bound";
    } catch (const Error& e) {
      entry.d = out.d;
      entry.gap = gap;
      entry.delta = gap + out.d;
      entry.ok = false;
      entry.note = e.what();
    }
    trace.levels.push_back(entry);
    if (!entry.ok) {
      aborted = true;
      trace.outcome = "aborted: " + entry.note;
      break;
    }
    gap = entry.gap;
  }

  out.x = restricted_radius(H, K, n, tol).center;
  out.y = T.T_AB(out.x);
  out.residual_x = dist(out.x, out.y, n);
  out.residual_y = dist(out.y, T.T_BA(out.y), n);
  if (aborted) return out;
  if (gap > tol) {
    trace.outcome = "budget_exhausted";
    return out;
  }
  const bool valid = out.residual_x <= out.d + 2.0 * tol && out.residual_y <= out.d + 2.0 * tol &&
                     contains(pair.A, out.x, n, tol) && contains(pair.B, out.y, n, tol);
  out.converged = valid;
  trace.converged = valid;
  trace.outcome = valid ? "converged" : "certificate failed: ||x - Tx|| or ||y - Ty|| exceeds d + 2 tol";
  return out;
}

}  // namespace proxpair
