#include "generators.hpp"
#include "proxpair/fixtures.hpp"
#include "proxpair/problem.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace proxpair;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("proxpair_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string field_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const io::SpecError& e) {
    return e.field();
  }
  return "(accepted)";
}

const char* kMinimal = R"({
  "norm": {"p": 2, "dim": 2},
  "bodies": {"A": {"polytope": [[0, 0], [0, 1]]}, "B": {"ball": {"center": [2, 0], "r": 1}}},
  "pairs": [["A", "B"]],
  "tasks": [{"task": "analyze", "seed": 1}]
})";

}  // namespace

TEST(Io, FixturesRoundTrip) {
  for (const auto& f : canonical_fixtures()) {
    const std::string text = serialize(f.spec);
    const ProblemSpec back = parse_problem(text);
    EXPECT_EQ(back, f.spec) << f.name;
    EXPECT_EQ(serialize(back), text) << f.name;
  }
}

TEST(Io, MinimalSpecParses) {
  const auto s = parse_problem(kMinimal);
  EXPECT_EQ(s.bodies.size(), 2u);
  EXPECT_TRUE(s.body("B").is_ball());
  EXPECT_EQ(s.tasks[0].seed, 1u);
  EXPECT_EQ(s.tasks[0].kind, TaskSpec::Kind::analyze);
}

TEST(Io, InfinityNormSerializesAsString) {
  const auto j = io::to_json(NormSpec::linf(3, {1, 2, 3}));
  EXPECT_EQ(j["p"], "inf");
  EXPECT_EQ(io::norm_from_json(j, "norm"), NormSpec::linf(3, {1, 2, 3}));
}

TEST(Io, DiagnosticsNameTheField) {
  std::string bad = kMinimal;
  bad.replace(bad.find("\"r\": 1"), 6, "\"r\": -1");
  EXPECT_EQ(field_of(bad), "bodies.B.ball.r");

  std::string wrong_dim = kMinimal;
  wrong_dim.replace(wrong_dim.find("[0, 1]"), 6, "[0, 1, 2]");
  EXPECT_EQ(field_of(wrong_dim), "bodies.A.polytope[1]");

  std::string unknown_body = kMinimal;
  unknown_body.replace(unknown_body.find("[\"A\", \"B\"]"), 10, "[\"A\", \"C\"]");
  EXPECT_EQ(field_of(unknown_body), "pairs[0]");

  std::string no_seed = kMinimal;
  no_seed.replace(no_seed.find(", \"seed\": 1"), 11, "");
  EXPECT_EQ(field_of(no_seed), "tasks[0].seed");

  std::string extra = kMinimal;
  extra.replace(extra.find("\"tasks\""), 7, "\"bogus\": 1, \"tasks\"");
  EXPECT_EQ(field_of(extra), "bogus");

  EXPECT_EQ(field_of("{ \"norm\": "), "(syntax)");
}

TEST(Io, EmitFixturesIsByteStable) {
  const auto a = scratch("emit_a");
  const auto b = scratch("emit_b");
  const auto first = emit_fixtures(a.string());
  const auto second = emit_fixtures(b.string());
  ASSERT_EQ(first.size(), 6u);
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(slurp(first[i]), slurp(second[i]));
    EXPECT_EQ(load_problem(first[i]), canonical_fixtures()[i].spec);
  }
}

TEST(Io, ReportsAreDeterministic) {
  const auto spec = fixture("parallel-segments-l2");
  EXPECT_EQ(render(run_tasks(spec), std::nullopt), render(run_tasks(spec), std::nullopt));
  const auto timed = render(run_tasks(spec), 1.5);
  EXPECT_NE(timed.find("\"wall_time_s\": 1.5"), std::string::npos);
}

TEST(Io, OverridesApplyToEveryTask) {
  Overrides o;
  o.seed = 77;
  const auto r = run_tasks(fixture("semisharp-counterexample-linf"), o);
  for (const auto& t : r.json["tasks"]) EXPECT_EQ(t["seed"], 77);
  const auto only = run_tasks(fixture("example2-linf"), {}, TaskSpec::Kind::falsify);
  ASSERT_EQ(only.json["tasks"].size(), 1u);
  EXPECT_EQ(only.json["tasks"][0]["task"], "falsify");
}

#ifdef PROXPAIR_CLI_PATH
namespace {
int cli(const std::string& args) {
  const std::string cmd = std::string(PROXPAIR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
}  // namespace

TEST(Cli, ExitCodes) {
  const auto dir = scratch("cli");
  ASSERT_EQ(cli("fixtures --out " + dir.string()), 0);
  EXPECT_EQ(cli("run --no-timing --spec " + (dir / "reflection-bpp.json").string()), 0);
  EXPECT_EQ(cli("analyze --spec " + (dir / "parallel-segments-l2.json").string()), 0);
  EXPECT_EQ(cli("run --spec " + (dir / "example2-linf.json").string()), 2);
  EXPECT_EQ(cli("run --spec " + (dir / "missing.json").string()), 1);
  std::ofstream(dir / "broken.json") << "{ \"norm\": ";
  EXPECT_EQ(cli("run --spec " + (dir / "broken.json").string()), 1);
  EXPECT_NE(cli("frobnicate"), 0);

  const auto out1 = dir / "r1.json";
  const auto out2 = dir / "r2.json";
  ASSERT_EQ(cli("solve --no-timing --spec " + (dir / "rotation-fixedpoint.json").string() + " --out " + out1.string()), 0);
  ASSERT_EQ(cli("solve --no-timing --spec " + (dir / "rotation-fixedpoint.json").string() + " --out " + out2.string()), 0);
  EXPECT_EQ(slurp(out1), slurp(out2));
}
#endif
