#include "proxpair/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace proxpair {

using io::Json;
using io::SpecError;

std::string to_string(TaskSpec::Kind kind) {
  switch (kind) {
    case TaskSpec::Kind::analyze: return "analyze";
    case TaskSpec::Kind::structure: return "structure";
    case TaskSpec::Kind::solve: return "solve";
    case TaskSpec::Kind::falsify: return "falsify";
  }
  return "analyze";
}

TaskSpec::Kind parse_task_kind(const std::string& text) {
  for (auto k : {TaskSpec::Kind::analyze, TaskSpec::Kind::structure, TaskSpec::Kind::solve, TaskSpec::Kind::falsify}) {
    if (to_string(k) == text) return k;
  }
  throw InvalidArgument("unknown task '" + text + "' (expected analyze, structure, solve or falsify)");
}

const ConvexBody& ProblemSpec::body(const std::string& name) const {
  for (const auto& [n, b] : bodies) {
    if (n == name) return b;
  }
  throw InvalidArgument("unknown body '" + name + "'");
}

const CyclicMapSpec& ProblemSpec::map(const std::string& name) const {
  for (const auto& [n, m] : maps) {
    if (n == name) return m;
  }
  throw InvalidArgument("unknown map '" + name + "'");
}

BodyPair ProblemSpec::pair(std::size_t index) const {
  if (index >= pairs.size()) throw InvalidArgument("pair index " + std::to_string(index) + " out of range");
  return BodyPair(body(pairs[index].first), body(pairs[index].second), norm);
}

namespace {

void reject_unknown(const Json& j, std::initializer_list<const char*> known, const std::string& field) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw SpecError(field.empty() ? key : field + "." + key, "unknown field");
  }
}

std::uint64_t unsigned_field(const Json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw SpecError(field, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

TaskSpec task_from_json(const Json& j, const std::string& field) {
  if (!j.is_object()) throw SpecError(field, "expected an object");
  reject_unknown(j, {"task", "pair", "map", "seed", "tol", "budget", "levels", "max_iter", "c"}, field);
  TaskSpec t;
  const auto kind = j.find("task");
  if (kind == j.end()) throw SpecError(field + ".task", "required field is missing");
  if (!kind->is_string()) throw SpecError(field + ".task", "expected a task name");
  try {
    t.kind = parse_task_kind(kind->get<std::string>());
  } catch (const Error& e) {
    throw SpecError(field + ".task", e.what());
  }
  const auto seed = j.find("seed");
  if (seed == j.end()) throw SpecError(field + ".seed", "required field is missing (seeds are mandatory)");
  t.seed = unsigned_field(*seed, field + ".seed");
  if (auto it = j.find("pair"); it != j.end()) t.pair = unsigned_field(*it, field + ".pair");
  if (auto it = j.find("map"); it != j.end()) {
    if (!it->is_string()) throw SpecError(field + ".map", "expected a map name");
    t.map = it->get<std::string>();
  }
  if (auto it = j.find("tol"); it != j.end()) {
    if (!it->is_number()) throw SpecError(field + ".tol", "expected a number");
    t.tol = it->get<double>();
  }
  if (auto it = j.find("budget"); it != j.end()) t.budget = unsigned_field(*it, field + ".budget");
  if (auto it = j.find("levels"); it != j.end()) t.levels = static_cast<int>(unsigned_field(*it, field + ".levels"));
  if (auto it = j.find("max_iter"); it != j.end()) {
    t.max_iter = static_cast<int>(unsigned_field(*it, field + ".max_iter"));
  }
  if (auto it = j.find("c"); it != j.end()) {
    if (it->is_number()) {
      t.c.push_back(it->get<double>());
    } else {
      const Vector c = io::vector_from_json(*it, field + ".c");
      t.c.assign(c.data(), c.data() + c.size());
    }
  }
  return t;
}

Json task_to_json(const TaskSpec& t) {
  Json out{{"task", to_string(t.kind)}, {"pair", t.pair}};
  if (!t.map.empty()) out["map"] = t.map;
  out["seed"] = t.seed;
  out["tol"] = t.tol;
  out["budget"] = t.budget;
  if (t.kind == TaskSpec::Kind::structure) out["levels"] = t.levels;
  if (t.kind == TaskSpec::Kind::solve) out["max_iter"] = t.max_iter;
  if (!t.c.empty()) out["c"] = t.c;
  return out;
}

ProblemSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw SpecError("(root)", "expected an object");
  reject_unknown(j, {"notes", "norm", "bodies", "pairs", "maps", "tasks"}, "");
  ProblemSpec spec;
  if (const auto notes = j.find("notes"); notes != j.end()) {
    if (!notes->is_string()) throw SpecError("notes", "expected a string");
    spec.notes = notes->get<std::string>();
  }
  const auto norm = j.find("norm");
  if (norm == j.end()) throw SpecError("norm", "required field is missing");
  spec.norm = io::norm_from_json(*norm, "norm");
  const int dim = spec.norm.dim();

  const auto bodies = j.find("bodies");
  if (bodies == j.end() || !bodies->is_object() || bodies->empty()) {
    throw SpecError("bodies", "expected a non-empty object of named bodies");
  }
  for (const auto& [name, b] : bodies->items()) {
    spec.bodies.emplace_back(name, io::body_from_json(b, dim, "bodies." + name));
  }

  const auto pairs = j.find("pairs");
  if (pairs == j.end() || !pairs->is_array()) throw SpecError("pairs", "expected a list of [nameA, nameB]");
  for (std::size_t i = 0; i < pairs->size(); ++i) {
    const Json& p = (*pairs)[i];
    const std::string f = "pairs[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      throw SpecError(f, "expected [nameA, nameB]");
    }
    spec.pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }

  if (const auto maps = j.find("maps"); maps != j.end()) {
    if (!maps->is_object()) throw SpecError("maps", "expected an object of named maps");
    for (const auto& [name, m] : maps->items()) {
      spec.maps.emplace_back(name, io::map_from_json(m, dim, "maps." + name));
    }
  }

  const auto tasks = j.find("tasks");
  if (tasks == j.end() || !tasks->is_array()) throw SpecError("tasks", "expected a list of tasks");
  for (std::size_t i = 0; i < tasks->size(); ++i) {
    spec.tasks.push_back(task_from_json((*tasks)[i], "tasks[" + std::to_string(i) + "]"));
  }
  validate(spec);
  return spec;
}

}  // namespace

void validate(const ProblemSpec& spec) {
  std::set<std::string> names;
  for (const auto& [name, body] : spec.bodies) {
    if (!names.insert(name).second) throw SpecError("bodies." + name, "duplicate name");
    require_same_dim(body.dim(), spec.norm.dim(), ("bodies." + name).c_str());
  }
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    for (const auto* name : {&spec.pairs[i].first, &spec.pairs[i].second}) {
      if (!names.count(*name)) throw SpecError("pairs[" + std::to_string(i) + "]", "unknown body '" + *name + "'");
    }
  }
  std::set<std::string> maps;
  for (const auto& [name, m] : spec.maps) {
    if (!maps.insert(name).second) throw SpecError("maps." + name, "duplicate name");
  }
  for (std::size_t i = 0; i < spec.tasks.size(); ++i) {
    const auto& t = spec.tasks[i];
    const std::string f = "tasks[" + std::to_string(i) + "]";
    if (t.pair >= spec.pairs.size()) throw SpecError(f + ".pair", "no pair with index " + std::to_string(t.pair));
    if (!(t.tol > 0.0)) throw SpecError(f + ".tol", "must be positive");
    if (t.budget == 0) throw SpecError(f + ".budget", "must be positive");
    if (t.kind == TaskSpec::Kind::solve) {
      if (t.map.empty()) throw SpecError(f + ".map", "solve needs a map");
      if (!maps.count(t.map)) throw SpecError(f + ".map", "unknown map '" + t.map + "'");
      if (t.c.size() > 1) throw SpecError(f + ".c", "solve takes at most one value");
    }
    for (double c : t.c) {
      if (!(c > 0.0 && c < 1.0)) throw SpecError(f + ".c", "values must lie in (0, 1)");
    }
  }
}

ProblemSpec parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError("(syntax)", e.what());
  }
  return spec_from_json(j);
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

Json to_json(const ProblemSpec& spec) {
  Json bodies = Json::object();
  for (const auto& [name, b] : spec.bodies) bodies[name] = io::to_json(b);
  Json pairs = Json::array();
  for (const auto& [a, b] : spec.pairs) pairs.push_back(Json::array({a, b}));
  Json out;
  if (!spec.notes.empty()) out["notes"] = spec.notes;
  out["norm"] = io::to_json(spec.norm);
  out["bodies"] = bodies;
  out["pairs"] = pairs;
  if (!spec.maps.empty()) {
    Json maps = Json::object();
    for (const auto& [name, m] : spec.maps) maps[name] = io::to_json(m);
    out["maps"] = maps;
  }
  Json tasks = Json::array();
  for (const auto& t : spec.tasks) tasks.push_back(task_to_json(t));
  out["tasks"] = tasks;
  return out;
}

std::string serialize(const ProblemSpec& spec) { return to_json(spec).dump(2) + "\n"; }

namespace {

bool closed(const Certificate& c, double tol) { return c.converged || c.gap <= tol; }

Json run_analyze(const BodyPair& pair, const TaskSpec& t, bool& certified) {
  const AnalysisOptions ao{t.tol, t.budget, t.seed, kernels::Exec::parallel};
  const ProximalCore core = proximal_core(pair, ao);
  const SemisharpVerdict semi = semisharp_check(pair, core, ao);
  const PairMetrics m = pair_metrics(pair, core, semi, ao);
  certified = closed(m.d_certificate, t.tol) && closed(m.r12_certificate, t.tol) && closed(m.r21_certificate, t.tol);
  return Json{{"metrics", io::to_json(m)}, {"core", io::to_json(core)}, {"semisharp", io::to_json(semi)}};
}

Json run_structure(const BodyPair& pair, const TaskSpec& t, bool& certified) {
  const AnalysisOptions ao{t.tol, t.budget, t.seed, kernels::Exec::parallel};
  const ProximalCore core = proximal_core(pair, ao);
  const StructureEstimate est = estimate_N(pair, core, t.budget, t.seed, t.tol);
  Json out{{"estimate", io::to_json(est)}};
  certified = true;
  if (t.levels > 0) {
    const std::vector<double> cs = t.c.empty() ? std::vector<double>{0.95} : t.c;
    Json demos = Json::array();
    for (double c : cs) {
      const ShrinkTrace trace = nested_hull_demo(pair, core, t.levels, c, t.seed, t.tol);
      const bool ok = trace.all_ok();
      certified = certified && ok;
      demos.push_back(Json{{"c", c}, {"certified", ok}, {"trace", io::to_json(trace)}});
    }
    out["nested_hull_demo"] = demos;
  }
  return out;
}

Json run_solve(const ProblemSpec& spec, const BodyPair& pair, const TaskSpec& t, bool& certified) {
  BppOptions bo;
  bo.tol = t.tol;
  bo.max_iter = t.max_iter;
  bo.budget = t.budget;
  bo.seed = t.seed;
  if (!t.c.empty()) bo.c = t.c.front();
  const BppResult r = solve_bpp(pair, spec.map(t.map), bo);
  certified = r.converged;
  return Json{{"result", io::to_json(r)}};
}

Json run_falsify(const BodyPair& pair, const TaskSpec& t, bool& certified) {
  const AnalysisOptions ao{t.tol, t.budget, t.seed, kernels::Exec::parallel};
  const ProximalCore core = proximal_core(pair, ao);
  const SemisharpVerdict semi = semisharp_check(pair, core, ao);
  const auto uc = property_uc_falsify(pair, core, ao);
  certified = true;
  return Json{{"norm_convexity", io::to_json(is_strictly_convex(pair.norm))},
              {"semisharp", io::to_json(semi)},
              {"property_uc_counterexample", uc ? io::to_json(*uc) : Json(nullptr)}};
}

}  // namespace

Report run_tasks(const ProblemSpec& spec, const Overrides& overrides, std::optional<TaskSpec::Kind> only) {
  Report report;
  report.json["tool"] = "proxpair";
  report.json["version"] = kToolVersion;
  report.json["norm"] = io::to_json(spec.norm);
  Json tasks = Json::array();
  for (std::size_t i = 0; i < spec.tasks.size(); ++i) {
    TaskSpec t = spec.tasks[i];
    if (only && t.kind != *only) continue;
    if (overrides.tol) t.tol = *overrides.tol;
    if (overrides.seed) t.seed = *overrides.seed;
    if (overrides.budget) t.budget = *overrides.budget;
    if (overrides.levels) t.levels = *overrides.levels;
    if (overrides.max_iter) t.max_iter = *overrides.max_iter;

    Json entry{{"index", i},
               {"task", to_string(t.kind)},
               {"pair", Json::array({spec.pairs[t.pair].first, spec.pairs[t.pair].second})},
               {"seed", t.seed},
               {"tol", t.tol},
               {"budget", t.budget}};
    if (t.kind == TaskSpec::Kind::structure) entry["levels"] = t.levels;
    if (t.kind == TaskSpec::Kind::solve) {
      entry["map"] = t.map;
      entry["max_iter"] = t.max_iter;
    }
    bool certified = false;
    try {
      const BodyPair pair = spec.pair(t.pair);
      Json body;
      switch (t.kind) {
        case TaskSpec::Kind::analyze: body = run_analyze(pair, t, certified); break;
        case TaskSpec::Kind::structure: body = run_structure(pair, t, certified); break;
        case TaskSpec::Kind::solve: body = run_solve(spec, pair, t, certified); break;
        case TaskSpec::Kind::falsify: body = run_falsify(pair, t, certified); break;
      }
      entry.update(body);
    } catch (const Error& e) {
      certified = false;
      entry["error"] = e.what();
    }
    entry["certified"] = certified;
    report.certified = report.certified && certified;
    tasks.push_back(std::move(entry));
  }
  report.json["tasks"] = tasks;
  report.json["certified"] = report.certified;
  return report;
}

std::string render(const Report& report, std::optional<double> wall_time_s) {
  Json j = report.json;
  if (wall_time_s) j["wall_time_s"] = *wall_time_s;
  return j.dump(2) + "\n";
}

}  // namespace proxpair
