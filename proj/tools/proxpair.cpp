// proxpair: run proximal-pair analyses and best proximity solves from a problem file.

#include "proxpair/fixtures.hpp"
#include "proxpair/kernels.hpp"
#include "proxpair/problem.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCertificate = 2;

struct Flags {
  std::string spec;
  std::string out;
  proxpair::Overrides overrides;
  bool no_timing = false;
};

void add_task_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--spec", f.spec, "problem file (JSON)")->required();
  cmd->add_option("--out", f.out, "report path (default: stdout)");
  cmd->add_option("--tol", f.overrides.tol, "tolerance for every task");
  cmd->add_option("--seed", f.overrides.seed, "seed for every task");
  cmd->add_option("--budget", f.overrides.budget, "sample budget for every task");
  cmd->add_option("--levels", f.overrides.levels, "nested-hull demo levels");
  cmd->add_option("--max-iter", f.overrides.max_iter, "shrink steps for solve");
  cmd->add_flag("--no-timing", f.no_timing, "omit wall_time_s from the report");
}

int run(const Flags& f, std::optional<proxpair::TaskSpec::Kind> only) {
  proxpair::ProblemSpec spec;
  try {
    spec = proxpair::load_problem(f.spec);
  } catch (const proxpair::InvalidArgument&) {
    throw;
  } catch (const proxpair::Error& e) {
    throw proxpair::InvalidArgument(e.what());
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = proxpair::run_tasks(spec, f.overrides, only);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text = proxpair::render(report, f.no_timing ? std::nullopt : std::optional<double>(wall));

  if (f.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(f.out, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) throw proxpair::InvalidArgument("cannot write '" + f.out + "'");
  }
  for (const auto& t : report.json["tasks"]) {
    std::cerr << "[" << t["index"].get<std::size_t>() << "] " << t["task"].get<std::string>() << " ("
              << t["pair"][0].get<std::string>() << ", " << t["pair"][1].get<std::string>() << "): "
              << (t["certified"].get<bool>() ? "certified" : "NOT certified");
    if (t.contains("error")) std::cerr << " - " << t["error"].get<std::string>();
    std::cerr << "\n";
  }
  if (report.json["tasks"].empty()) std::cerr << "no matching tasks in " << f.spec << "\n";
  return report.certified ? kExitOk : kExitCertificate;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("PROXPAIR_THREADS")) {
    proxpair::kernels::set_thread_cap(std::atoi(threads));
  }

  CLI::App app{"Proximal pairs, normal structure and best proximity pairs over convex bodies"};
  app.require_subcommand(1);
  Flags flags;
  std::string fixture_dir;

  using Kind = proxpair::TaskSpec::Kind;
  std::vector<std::pair<CLI::App*, std::optional<Kind>>> task_cmds;
  for (auto [name, kind, help] : {std::tuple{"analyze", Kind::analyze, "distance, radii, proximal core, semisharpness"},
                                  std::tuple{"structure", Kind::structure, "structure constants and nested-hull demo"},
                                  std::tuple{"solve", Kind::solve, "best proximity pair of a cyclic map"},
                                  std::tuple{"falsify", Kind::falsify, "counterexample search"}}) {
    auto* cmd = app.add_subcommand(name, std::string("run the problem file's ") + name + " tasks: " + help);
    add_task_flags(cmd, flags);
    task_cmds.emplace_back(cmd, kind);
  }
  auto* all = app.add_subcommand("run", "run every task in the problem file");
  add_task_flags(all, flags);
  task_cmds.emplace_back(all, std::nullopt);
  auto* fixtures = app.add_subcommand("fixtures", "write the canonical fixture files");
  fixtures->add_option("--out", fixture_dir, "directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*fixtures) {
      for (const auto& path : proxpair::emit_fixtures(fixture_dir)) std::cout << path << "\n";
      return kExitOk;
    }
    for (const auto& [cmd, kind] : task_cmds) {
      if (*cmd) return run(flags, kind);
    }
  } catch (const proxpair::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const proxpair::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCertificate;
  }
  return kExitInput;
}
