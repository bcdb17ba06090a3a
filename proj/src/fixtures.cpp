#include "proxpair/fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace proxpair {

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

ConvexBody poly(std::initializer_list<Vector> pts) { return ConvexBody::polytope(std::vector<Vector>(pts)); }

TaskSpec task(TaskSpec::Kind kind, std::uint64_t seed = 0) {
  TaskSpec t;
  t.kind = kind;
  t.seed = seed;
  return t;
}

AffineMap affine(Eigen::MatrixXd m, Vector offset) { return AffineMap{std::move(m), std::move(offset)}; }

ProblemSpec unit_segments(const NormSpec& norm) {
  ProblemSpec s;
  s.norm = norm;
  s.bodies = {{"A", poly({vec({0, 0}), vec({0, 1})})}, {"B", poly({vec({1, 0}), vec({1, 1})})}};
  s.pairs = {{"A", "B"}};
  return s;
}

ProblemSpec example1_dim4() {
  constexpr int kLongitudes = 24;
  constexpr int kRings = 12;
  constexpr double h = 0.5;
  const Points S = sphere_polytope(kLongitudes, kRings);
  Points V = Points::Zero(4, S.cols());
  V.bottomRows(3) = S;
  ProblemSpec s;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "unit 3-ball slices at x1 = 0 and x1 = %.1f, each replaced by an inscribed polytope "
                "(%d longitudes, rings every %d degrees, %ld vertices); Hausdorff error <= %.9f",
                h, kLongitudes, 180 / kRings, static_cast<long>(S.cols()), sphere_polytope_error(kLongitudes, kRings));
  s.notes = buf;
  s.norm = NormSpec::lp(2.0, 4);
  const ConvexBody A = ConvexBody::polytope(V);
  s.bodies = {{"A", A}, {"B", ConvexBody::translate(A, vec({h, 0, 0, 0}))}};
  s.pairs = {{"A", "B"}};
  TaskSpec analyze = task(TaskSpec::Kind::analyze);
  analyze.tol = 1e-6;
  TaskSpec structure = task(TaskSpec::Kind::structure);
  structure.tol = 1e-6;
  structure.budget = 64;
  s.tasks = {analyze, structure};
  return s;
}

ProblemSpec example2_linf() {
  ProblemSpec s = unit_segments(NormSpec::linf(2));
  s.notes = "vertical unit segments at x = 0 and x = 1 under the max norm";
  TaskSpec structure = task(TaskSpec::Kind::structure);
  structure.budget = 2000;
  structure.levels = 5;
  structure.c = {0.9, 0.99, 0.999};
  s.tasks = {task(TaskSpec::Kind::analyze), structure, task(TaskSpec::Kind::falsify)};
  return s;
}

ProblemSpec semisharp_counterexample() {
  ProblemSpec s;
  s.notes = "A = {0}, B = segment from (1, 1) to (1, -1) under the max norm: two mates of the origin";
  s.norm = NormSpec::linf(2);
  s.bodies = {{"A", poly({vec({0, 0})})}, {"B", poly({vec({1, 1}), vec({1, -1})})}};
  s.pairs = {{"A", "B"}};
  s.tasks = {task(TaskSpec::Kind::analyze), task(TaskSpec::Kind::falsify)};
  return s;
}

ProblemSpec parallel_segments() {
  ProblemSpec s = unit_segments(NormSpec::lp(2.0, 2));
  s.notes = "parallel unit segments, B = A + (1, 0); translate map Tx = x + h on A, Ty = y - h on B";
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
  s.maps = {{"translate", CyclicMapSpec{affine(I, vec({1, 0})), affine(I, vec({-1, 0})), CyclicMapSpec::Mode::isometry}}};
  TaskSpec structure = task(TaskSpec::Kind::structure);
  structure.budget = 2000;
  structure.levels = 5;
  structure.c = {0.95};
  TaskSpec solve = task(TaskSpec::Kind::solve);
  solve.map = "translate";
  s.tasks = {task(TaskSpec::Kind::analyze), structure, solve, task(TaskSpec::Kind::falsify)};
  return s;
}

ProblemSpec reflection_bpp() {
  ProblemSpec s = unit_segments(NormSpec::lp(2.0, 2));
  s.notes = "point reflection through (1/2, 1/2) swaps the segments; unique best proximity pair (0, 1/2), (1, 1/2)";
  const Eigen::MatrixXd R = -Eigen::MatrixXd::Identity(2, 2);
  s.maps = {{"reflect", CyclicMapSpec{affine(R, vec({1, 1})), affine(R, vec({1, 1})), CyclicMapSpec::Mode::isometry}}};
  TaskSpec solve = task(TaskSpec::Kind::solve);
  solve.map = "reflect";
  s.tasks = {solve};
  return s;
}

ProblemSpec rotation_fixedpoint() {
  ProblemSpec s;
  s.notes = "A = B = unit square, quarter turn about its center; d = 0 and the center is the fixed point";
  s.norm = NormSpec::lp(2.0, 2);
  const ConvexBody square = poly({vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1})});
  s.bodies = {{"A", square}, {"B", square}};
  s.pairs = {{"A", "B"}};
  Eigen::MatrixXd R(2, 2);
  R << 0, -1, 1, 0;
  const Vector offset = vec({1, 0});
  s.maps = {{"rotate", CyclicMapSpec{affine(R, offset), affine(R, offset), CyclicMapSpec::Mode::isometry}}};
  TaskSpec solve = task(TaskSpec::Kind::solve);
  solve.map = "rotate";
  s.tasks = {solve};
  return s;
}

}  // namespace

Points sphere_polytope(int longitudes, int rings) {
  if (longitudes < 3 || rings < 2) throw InvalidArgument("sphere_polytope: need >= 3 longitudes and >= 2 rings");
  const long count = static_cast<long>(longitudes) * (rings - 1) + 2;
  Points out(3, count);
  Eigen::Index k = 0;
  out.col(k++) = vec({0, 0, -1});
  for (int r = 1; r < rings; ++r) {
    const double lat = -std::numbers::pi / 2 + std::numbers::pi * r / rings;
    for (int l = 0; l < longitudes; ++l) {
      const double lon = 2.0 * std::numbers::pi * l / longitudes;
      out.col(k++) = vec({std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)});
    }
  }
  out.col(k++) = vec({0, 0, 1});
  return out;
}

double sphere_polytope_error(int longitudes, int rings) {
  const double step = std::max(2.0 * std::numbers::pi / longitudes, std::numbers::pi / rings);
  return 1.0 - std::cos(step);
}

std::vector<Fixture> canonical_fixtures() {
  return {{"example1-dim4", example1_dim4()},
          {"example2-linf", example2_linf()},
          {"semisharp-counterexample-linf", semisharp_counterexample()},
          {"parallel-segments-l2", parallel_segments()},
          {"reflection-bpp", reflection_bpp()},
          {"rotation-fixedpoint", rotation_fixedpoint()}};
}

ProblemSpec fixture(const std::string& name) {
  for (auto& f : canonical_fixtures()) {
    if (f.name == name) return std::move(f.spec);
  }
  throw InvalidArgument("unknown fixture '" + name + "'");
}

std::vector<std::string> emit_fixtures(const std::string& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw Error("cannot create '" + directory + "': " + ec.message());
  std::vector<std::string> written;
  for (const auto& f : canonical_fixtures()) {
    const std::string path = (fs::path(directory) / (f.name + ".json")).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << serialize(f.spec);
    if (!out) throw Error("write failed for '" + path + "'");
    written.push_back(path);
  }
  return written;
}

}  // namespace proxpair
