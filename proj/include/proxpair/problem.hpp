#pragma once

#include "proxpair/io.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace proxpair {

struct TaskSpec {
  enum class Kind { analyze, structure, solve, falsify };
  Kind kind = Kind::analyze;
  /// Index into ProblemSpec::pairs.
  std::size_t pair = 0;
  /// Map name; solve only.
  std::string map;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::size_t budget = 256;
  /// structure: nested-hull demo levels (0 skips the demo).
  int levels = 0;
  int max_iter = 50;
  /// structure: demo contraction factors; solve: at most one, fixing c.
  std::vector<double> c;

  bool operator==(const TaskSpec&) const = default;
};

std::string to_string(TaskSpec::Kind kind);
TaskSpec::Kind parse_task_kind(const std::string& text);

struct ProblemSpec {
  /// Free text carried through serialization (provenance, approximation errors).
  std::string notes;
  NormSpec norm = NormSpec::lp(2.0, 1);
  std::vector<std::pair<std::string, ConvexBody>> bodies;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::pair<std::string, CyclicMapSpec>> maps;
  std::vector<TaskSpec> tasks;

  const ConvexBody& body(const std::string& name) const;
  const CyclicMapSpec& map(const std::string& name) const;
  BodyPair pair(std::size_t index) const;

  bool operator==(const ProblemSpec&) const = default;
};

/// Parses and validates. Syntax errors report line and column; schema errors
/// name the field. Both throw io::SpecError.
ProblemSpec parse_problem(const std::string& text);
ProblemSpec load_problem(const std::string& path);
/// Names resolve, tasks reference existing pairs and maps, parameters in range.
void validate(const ProblemSpec& spec);
io::Json to_json(const ProblemSpec& spec);
std::string serialize(const ProblemSpec& spec);

/// Command-line values that replace every task's own.
struct Overrides {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::optional<int> levels;
  std::optional<int> max_iter;
};

struct Report {
  io::Json json;
  /// Every task closed its certificates.
  bool certified = true;
};

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs the tasks in order (only those of `only`, when given). A task whose
/// solver or certificate fails is recorded with "certified": false.
Report run_tasks(const ProblemSpec& spec, const Overrides& overrides = {},
                 std::optional<TaskSpec::Kind> only = std::nullopt);

/// Pretty-printed report; the wall time field is the last line of the object.
std::string render(const Report& report, std::optional<double> wall_time_s);

}  // namespace proxpair
