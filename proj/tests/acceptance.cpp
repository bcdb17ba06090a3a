// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "generators.hpp"
#include "grid_oracle.hpp"
#include "proxpair/bpp.hpp"
#include "proxpair/fixtures.hpp"
#include "proxpair/problem.hpp"
#include "proxpair/structure.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace proxpair;
using testgen::vec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool all_certified(const std::vector<CertifiedPoint>& pts, std::size_t candidates, double d, double tol) {
  if (pts.size() != candidates) return false;
  for (const auto& p : pts) {
    if (p.distance > d + tol) return false;
  }
  return true;
}

Outcome example1_core() {
  const auto spec = fixture("example1-dim4");
  const auto t0 = std::chrono::steady_clock::now();
  const auto pair = spec.pair(0);
  AnalysisOptions o;
  o.tol = 1e-6;
  const auto core = proximal_core(pair, o);
  const double t = seconds_since(t0);
  const bool ok = core.covers_A && core.covers_B && all_certified(core.certified_A, core.candidates_A, core.d, 1e-6) &&
                  all_certified(core.certified_B, core.candidates_B, core.d, 1e-6) && t < 10.0;
  return {ok, fmt("%.0f + %.0f candidates certified, %.2f s", double(core.certified_A.size()),
                  double(core.certified_B.size()), t)};
}

Outcome example2_c0() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pair = fixture("example2-linf").pair(0);
  const auto core = proximal_core(pair);
  const double c0 = estimate_c0(pair, 10000, 0);
  const double t = seconds_since(t0);
  const bool ok = core.covers_A && core.covers_B && c0 >= 1.0 - 1e-6 && t < 30.0;
  return {ok, fmt("covers A: %.0f, covers B: %.0f, c0_hat = %.9f", double(core.covers_A), double(core.covers_B), c0) +
                  fmt(", %.2f s", t)};
}

Outcome semisharp_witness() {
  const auto pair = fixture("semisharp-counterexample-linf").pair(0);
  const auto v = semisharp_check(pair, proximal_core(pair));
  if (v.status != SemisharpVerdict::Status::fails || !v.witness) return {false, "no witness"};
  const auto& w = *v.witness;
  const bool ok = std::abs(w.dxy - 1) <= 1e-12 && std::abs(w.dxz - 1) <= 1e-12 && std::abs(w.dyz - 2) <= 1e-12;
  return {ok, fmt("mates at %.15g and %.15g, %.15g apart", w.dxy, w.dxz, w.dyz)};
}

Outcome pythagorean() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int dim = 2 + static_cast<int>(seed % 3);
    const auto p = testgen::random_parallel_pair(seed, dim);
    const BodyPair pair(p.A, p.B, NormSpec::lp(2, dim));
    const auto core = proximal_core(pair);
    const auto xs = sample(p.A, 4, Rng::derive(seed, 1), pair.norm);
    const auto ys = sample(p.B, 4, Rng::derive(seed, 2), pair.norm);
    for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, pythagorean_residual(pair, xs[i], ys[i], core));
  }
  const auto l1 = BodyPair(testgen::poly({vec({0, 0}), vec({0, 1})}), testgen::poly({vec({1, 0}), vec({1, 1})}),
                           NormSpec::lp(1, 2));
  const double off = pythagorean_residual(l1, vec({0, 0}), vec({1, 1}), proximal_core(l1));
  return {worst < 1e-9 && off > 0.1, fmt("max l2 residual %.3g over 4000 points, l1 residual %.3g", worst, off)};
}

Outcome hilbert_bound() {
  const auto pair = fixture("parallel-segments-l2").pair(0);
  const auto core = proximal_core(pair);
  const auto est = estimate_N(pair, core, 10000, 5);
  std::size_t samples = est.samples;
  double excess = est.hilbert_excess.value_or(INFINITY);
  // Further Euclidean pairs: random parallel pairs and the 4-D example.
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto p = testgen::random_parallel_pair(seed, 3);
    const BodyPair bp(p.A, p.B, NormSpec::lp(2, 3));
    const auto e = estimate_N(bp, proximal_core(bp), 1000, seed);
    samples += e.samples;
    excess = std::max(excess, e.hilbert_excess.value_or(INFINITY));
  }
  const SubPair full{pair.A, pair.B, true, true, true};
  const double ratio = subpair_ratio(full, core.d, pair.norm).ratio;
  const bool ok = samples >= 10000 && excess <= 1e-9 && std::abs(ratio - std::sqrt(5.0 / 8.0)) <= 1e-6;
  return {ok, fmt("%.0f sub-pairs, max excess %.3g, full ratio %.9f", double(samples), excess, ratio)};
}

double reflection_residual(double s, const void*) {
  // x = (0, s) on A, Tx = (1, 1 - s).
  return std::hypot(1.0, 1.0 - 2.0 * s);
}

Outcome reflection_contraction() {
  const auto spec = fixture("reflection-bpp");
  const auto t0 = std::chrono::steady_clock::now();
  BppOptions o;
  o.seed = spec.tasks[0].seed;
  const auto r = solve_bpp(spec.pair(0), spec.map("reflect"), o);
  const double t = seconds_since(t0);
  const auto& lv = r.trace.levels;
  bool bounded = !lv.empty();
  for (const auto& l : lv) {
    const double bound = std::pow(r.trace.c_used, l.level) * (lv.front().delta - lv.front().d);
    bounded = bounded && (l.delta - l.d) <= bound + 1e-6;
  }
  const double s = oracle::grid_argmin_1d(reflection_residual, nullptr, 1e-3);
  const double err = (r.x - vec({0, s})).norm();
  return {r.converged && bounded && err <= 1e-4 && t < 60.0,
          fmt("%.0f levels, |x - grid argmin| = %.3g, %.2f s", double(lv.size()), err, t)};
}

Outcome rotation_fixed_point() {
  const auto spec = fixture("rotation-fixedpoint");
  const auto r = solve_bpp(spec.pair(0), spec.map("rotate"), BppOptions{});
  const double err = (r.x - vec({0.5, 0.5})).norm();
  return {r.residual_x <= 1e-6 && err <= 1e-6, fmt("residual %.3g, distance to center %.3g", r.residual_x, err)};
}

bool geometric(const ShrinkTrace& t, double c) {
  for (std::size_t i = 1; i < t.levels.size(); ++i) {
    if (!(t.levels[i].gap <= c * t.levels[i - 1].gap + 1e-9) || !t.levels[i].ok) return false;
  }
  return !t.levels.empty() && t.levels.front().ok;
}

Outcome nested_demo() {
  const auto par = fixture("parallel-segments-l2").pair(0);
  const bool shrinks = geometric(nested_hull_demo(par, proximal_core(par), 5, 0.95, 0), 0.95);
  const auto ex2 = fixture("example2-linf").pair(0);
  const auto core = proximal_core(ex2);
  int failed = 0;
  for (double c : {0.9, 0.99, 0.999}) failed += nested_hull_demo(ex2, core, 5, c, 0).all_ok() ? 0 : 1;
  return {shrinks && failed == 3, std::string("l2 segments contract: ") + (shrinks ? "yes" : "no") +
                                      fmt("; max-norm failures %.0f of 3", failed)};
}

struct OracleCase {
  std::string name;
  BodyPair pair;
  oracle::ParamBody A;
  oracle::ParamBody B;
  double p;
};

oracle::ParamBody param_of(const ConvexBody& body) {
  // Fixture bodies are points or segments.
  const Points& V = body.vertices();
  if (V.cols() == 1) return oracle::point(V.col(0));
  return oracle::segment(V.col(0), V.col(1));
}

oracle::ParamBody bounding_box(const ConvexBody& body) {
  const Vector lo = body.vertices().rowwise().minCoeff();
  const Vector hi = body.vertices().rowwise().maxCoeff();
  return oracle::box(lo, hi - lo);
}

Outcome oracle_agreement() {
  std::vector<OracleCase> cases;
  for (const auto& f : canonical_fixtures()) {
    if (f.spec.norm.dim() > 3) continue;
    for (std::size_t i = 0; i < f.spec.pairs.size(); ++i) {
      const auto pair = f.spec.pair(i);
      const double p = pair.norm.is_infinity() ? oracle::kInf : pair.norm.p();
      if (pair.A.vertices().cols() <= 2 && pair.B.vertices().cols() <= 2) {
        cases.push_back({f.name, pair, param_of(pair.A), param_of(pair.B), p});
      } else {
        // The only larger fixture bodies are axis-aligned squares.
        cases.push_back({f.name, pair, bounding_box(pair.A), bounding_box(pair.B), p});
      }
    }
  }
  const Vector corner = vec({1.5, 0.2, 0.3});
  const std::vector<Vector> tri = {corner, Vector(corner + vec({1, 0, 0})), Vector(corner + vec({0, 1, 0})),
                                   Vector(corner + vec({0, 0, 1}))};
  std::vector<Vector> cube;
  for (int m = 0; m < 8; ++m) cube.push_back(vec({double(m & 1), double((m >> 1) & 1), double((m >> 2) & 1)}));
  for (const auto& [n, p] : {std::pair{NormSpec::lp(2, 3), 2.0}, std::pair{NormSpec::lp(1, 3), 1.0},
                             std::pair{NormSpec::linf(3), oracle::kInf}, std::pair{NormSpec::lp(3, 3), 3.0}}) {
    cases.push_back({"cube-simplex", BodyPair(ConvexBody::polytope(cube), ConvexBody::polytope(tri), n),
                     oracle::box(vec({0, 0, 0}), vec({1, 1, 1})), oracle::simplex(tri), p});
  }
  double worst = 0.0;
  std::string where = "none";
  for (const auto& c : cases) {
    const auto gd = oracle::grid_distance(c.A, c.B, c.p, 1e-3);
    const auto gD = oracle::grid_diameter(c.A, c.B, c.p, 1e-3);
    const double dev = std::max(std::abs(pair_distance(c.pair).d - gd.value),
                                std::abs(pair_diameter(c.pair).delta - gD.value));
    if (dev > worst) {
      worst = dev;
      where = c.name + fmt(" (p = %g)", c.p);
    }
  }
  return {worst <= 1e-4, fmt("%.0f pairs, max deviation %.3g at ", double(cases.size()), worst) + where};
}

Outcome determinism() {
  std::string first;
  std::string second;
  for (const auto& f : canonical_fixtures()) first += render(run_tasks(f.spec), std::nullopt);
  for (const auto& f : canonical_fixtures()) second += render(run_tasks(f.spec), std::nullopt);
  return {first == second && !first.empty(), fmt("%.0f report bytes", double(first.size()))};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"example 1 (dim 4): A0 = A and B0 = B", example1_core},
      {"example 2 (max norm): A0 = A, B0 = B, c0 = 1", example2_c0},
      {"non-strictly-convex norm: two mates at distance 2", semisharp_witness},
      {"Pythagorean identity on parallel pairs", pythagorean},
      {"Euclidean structure bound and sqrt(5/8)", hilbert_bound},
      {"reflection solve contracts to the grid optimum", reflection_contraction},
      {"rotation fixed point", rotation_fixed_point},
      {"nested hull demo", nested_demo},
      {"grid oracle agreement", oracle_agreement},
      {"report determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
