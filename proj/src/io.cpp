#include "proxpair/io.hpp"

#include <cmath>
#include <limits>

namespace proxpair::io {

namespace {

const Json& member(const Json& j, const char* key, const std::string& field) {
  if (!j.is_object()) throw SpecError(field, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SpecError(field + "." + key, "required field is missing");
  return *it;
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) throw SpecError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SpecError(field, "expected a finite number");
  return v;
}

// Non-finite values have no JSON literal; they are written as strings.
// Negative zero is written as 0.0.
Json real(double v) {
  if (v == 0.0) return 0.0;
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

template <typename T>
Json optional_real(const std::optional<T>& v) {
  return v ? real(*v) : Json(nullptr);
}

Json optional_vector(const std::optional<Vector>& v) { return v ? to_json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(real(v[i]));
  return out;
}

Json to_json(const Points& pts) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < pts.cols(); ++i) out.push_back(to_json(Vector(pts.col(i))));
  return out;
}

Json to_json(const NormSpec& norm) {
  Json out;
  if (norm.is_infinity()) {
    out["p"] = "inf";
  } else {
    out["p"] = norm.p();
  }
  out["dim"] = norm.dim();
  if (norm.weighted()) out["weights"] = norm.weights();
  return out;
}

Json to_json(const ConvexBody& body) {
  Json out;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ConvexBody::Polytope>) {
          out["polytope"] = to_json(r.vertices);
        } else if constexpr (std::is_same_v<R, ConvexBody::Ball>) {
          out["ball"] = Json{{"center", to_json(r.center)}, {"r", r.radius}};
        } else {
          out["translate"] = Json{{"base", to_json(*r.base)}, {"shift", to_json(r.shift)}};
        }
      },
      body.repr());
  return out;
}

Json to_json(const AffineMap& map) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < map.matrix.rows(); ++i) rows.push_back(to_json(Vector(map.matrix.row(i).transpose())));
  return Json{{"matrix", rows}, {"offset", to_json(map.offset)}};
}

Json to_json(const CyclicMapSpec& map) {
  return Json{{"T_AB", to_json(map.T_AB)}, {"T_BA", to_json(map.T_BA)}, {"mode", to_string(map.mode)}};
}

Vector vector_from_json(const Json& j, const std::string& field, long dim) {
  if (!j.is_array()) throw SpecError(field, "expected an array of numbers");
  if (dim >= 0 && static_cast<long>(j.size()) != dim) {
    throw SpecError(field, "expected " + std::to_string(dim) + " entries, found " + std::to_string(j.size()));
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

NormSpec norm_from_json(const Json& j, const std::string& field) {
  const Json& dj = member(j, "dim", field);
  if (!dj.is_number_integer() || dj.get<long>() < 1) throw SpecError(field + ".dim", "expected a positive integer");
  const int dim = dj.get<int>();
  std::vector<double> weights;
  if (const auto it = j.find("weights"); it != j.end()) {
    const Vector w = vector_from_json(*it, field + ".weights", dim);
    weights.assign(w.data(), w.data() + w.size());
  }
  const Json& pj = member(j, "p", field);
  try {
    if (pj.is_string()) {
      if (pj.get<std::string>() != "inf") throw SpecError(field + ".p", "expected a number >= 1 or \"inf\"");
      return NormSpec::linf(dim, weights);
    }
    return NormSpec::lp(number(pj, field + ".p"), dim, weights);
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(field, e.what());
  }
}

ConvexBody body_from_json(const Json& j, int dim, const std::string& field) {
  if (!j.is_object() || j.size() != 1) {
    throw SpecError(field, "expected exactly one of \"polytope\", \"ball\", \"translate\"");
  }
  try {
    if (const auto it = j.find("polytope"); it != j.end()) {
      const std::string f = field + ".polytope";
      if (!it->is_array() || it->empty()) throw SpecError(f, "expected a non-empty list of points");
      std::vector<Vector> pts;
      for (std::size_t i = 0; i < it->size(); ++i) pts.push_back(vector_from_json((*it)[i], f + "[" + std::to_string(i) + "]", dim));
      return ConvexBody::polytope(pts);
    }
    if (const auto it = j.find("ball"); it != j.end()) {
      const std::string f = field + ".ball";
      Vector center = vector_from_json(member(*it, "center", f), f + ".center", dim);
      const double r = number(member(*it, "r", f), f + ".r");
      if (r < 0.0) throw SpecError(f + ".r", "radius must be non-negative");
      return ConvexBody::ball(std::move(center), r);
    }
    if (const auto it = j.find("translate"); it != j.end()) {
      const std::string f = field + ".translate";
      const ConvexBody base = body_from_json(member(*it, "base", f), dim, f + ".base");
      return ConvexBody::translate(base, vector_from_json(member(*it, "shift", f), f + ".shift", dim));
    }
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(field, e.what());
  }
  throw SpecError(field, "expected exactly one of \"polytope\", \"ball\", \"translate\"");
}

namespace {

AffineMap affine_from_json(const Json& j, int dim, const std::string& field) {
  const Json& m = member(j, "matrix", field);
  if (!m.is_array() || static_cast<int>(m.size()) != dim) {
    throw SpecError(field + ".matrix", "expected " + std::to_string(dim) + " rows");
  }
  AffineMap out;
  out.matrix.resize(dim, dim);
  for (int i = 0; i < dim; ++i) {
    out.matrix.row(i) = vector_from_json(m[static_cast<std::size_t>(i)], field + ".matrix[" + std::to_string(i) + "]", dim).transpose();
  }
  out.offset = vector_from_json(member(j, "offset", field), field + ".offset", dim);
  return out;
}

}  // namespace

CyclicMapSpec map_from_json(const Json& j, int dim, const std::string& field) {
  CyclicMapSpec out;
  out.T_AB = affine_from_json(member(j, "T_AB", field), dim, field + ".T_AB");
  out.T_BA = affine_from_json(member(j, "T_BA", field), dim, field + ".T_BA");
  const Json& mode = member(j, "mode", field);
  if (!mode.is_string()) throw SpecError(field + ".mode", "expected \"isometry\" or \"audit\"");
  try {
    out.mode = parse_map_mode(mode.get<std::string>());
  } catch (const Error& e) {
    throw SpecError(field + ".mode", e.what());
  }
  return out;
}

Json to_json(const Certificate& c) {
  return Json{{"method", c.method}, {"iterations", c.iterations}, {"gap", real(c.gap)}, {"converged", c.converged}};
}

Json to_json(const ConvexityVerdict& v) {
  Json out;
  switch (v.status) {
    case ConvexityVerdict::Status::strictly_convex: out["status"] = "strictly_convex"; break;
    case ConvexityVerdict::Status::not_strictly_convex: out["status"] = "not_strictly_convex"; break;
    case ConvexityVerdict::Status::unknown: out["status"] = "unknown"; break;
  }
  if (v.witness) {
    out["witness"] = Json{{"c1", to_json(v.witness->first)}, {"c2", to_json(v.witness->second)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json to_json(const ProximalCore& core) {
  std::size_t refined_A = 0;
  std::size_t refined_B = 0;
  for (const auto& p : core.certified_A) refined_A += p.refined;
  for (const auto& p : core.certified_B) refined_B += p.refined;
  return Json{{"d", real(core.d)},
              {"tol", core.tol},
              {"x_d", to_json(core.x_d)},
              {"y_d", to_json(core.y_d)},
              {"A0_equals_A", core.covers_A},
              {"B0_equals_B", core.covers_B},
              {"candidates_A", core.candidates_A},
              {"candidates_B", core.candidates_B},
              {"certified_A", core.certified_A.size()},
              {"certified_B", core.certified_B.size()},
              {"refined_A", refined_A},
              {"refined_B", refined_B},
              {"certified_exact", core.certified_exact},
              {"A0", core.A0 ? to_json(*core.A0) : Json(nullptr)},
              {"B0", core.B0 ? to_json(*core.B0) : Json(nullptr)},
              {"shift", optional_vector(core.shift)}};
}

Json to_json(const MateWitness& w) {
  return Json{{"x", to_json(w.x)},           {"y", to_json(w.y)},     {"z", to_json(w.z)},
              {"x_in_A", w.x_in_A},          {"dxy", real(w.dxy)},    {"dxz", real(w.dxz)},
              {"dyz", real(w.dyz)}};
}

Json to_json(const SemisharpVerdict& v) {
  return Json{{"status", to_string(v.status)},
              {"witness", v.witness ? to_json(*v.witness) : Json(nullptr)},
              {"points_searched", v.points_searched},
              {"basis", v.basis}};
}

Json to_json(const PairMetrics& m) {
  return Json{{"d", real(m.d)},
              {"delta", real(m.delta)},
              {"r12", real(m.r12)},
              {"r21", real(m.r21)},
              {"Rmax", real(m.Rmax)},
              {"x_d", to_json(m.x_d)},
              {"y_d", to_json(m.y_d)},
              {"x_delta", to_json(m.x_delta)},
              {"y_delta", to_json(m.y_delta)},
              {"center12", to_json(m.center12)},
              {"center21", to_json(m.center21)},
              {"proximal", m.proximal},
              {"semisharp", m.semisharp},
              {"sharp", m.sharp},
              {"parallel_h", optional_vector(m.parallel_h)},
              {"d_certificate", to_json(m.d_certificate)},
              {"r12_certificate", to_json(m.r12_certificate)},
              {"r21_certificate", to_json(m.r21_certificate)},
              {"tol", m.tol}};
}

Json to_json(const StructureEstimate& e) {
  return Json{{"N_hat", real(e.N_hat)},
              {"c0_hat", real(e.c0_hat)},
              {"hilbert_bound", optional_real(e.hilbert_bound)},
              {"hilbert_excess", optional_real(e.hilbert_excess)},
              {"decomposition_residual", optional_real(e.decomposition_residual)},
              {"samples", e.samples},
              {"samples_matching", e.samples_matching},
              {"seed", e.seed},
              {"basis", e.basis},
              {"uniform_normal_structure", e.uniform_normal_structure}};
}

Json to_json(const ShrinkTrace& t) {
  Json levels = Json::array();
  for (const auto& l : t.levels) {
    Json entry{{"level", l.level}, {"delta", real(l.delta)}, {"d", real(l.d)},
               {"gap", real(l.gap)}, {"bound", real(l.bound)}, {"ok", l.ok}};
    if (!l.note.empty()) entry["note"] = l.note;
    if (l.snapshot && l.snapshot->first.is_polytope() && l.snapshot->second.is_polytope()) {
      entry["vertices"] = Json{{"H", l.snapshot->first.vertices().cols()}, {"K", l.snapshot->second.vertices().cols()}};
    }
    levels.push_back(std::move(entry));
  }
  return Json{{"levels", levels}, {"c_used", real(t.c_used)}, {"converged", t.converged}, {"outcome", t.outcome}};
}

Json to_json(const NonexpansiveCertificate& c) {
  Json out{{"holds", c.holds},
           {"analytic", c.analytic},
           {"worst_ratio", real(c.worst_ratio)},
           {"samples", c.samples},
           {"cyclicity_points", c.cyclicity_points},
           {"basis", c.basis}};
  if (c.violation) {
    out["violation"] = Json{{"x", to_json(c.violation->x)},
                            {"y", to_json(c.violation->y)},
                            {"before", real(c.violation->before)},
                            {"after", real(c.violation->after)}};
  } else {
    out["violation"] = nullptr;
  }
  return out;
}

Json to_json(const BppResult& r) {
  return Json{{"x", to_json(r.x)},
              {"y", to_json(r.y)},
              {"d", real(r.d)},
              {"N_hat", real(r.N_hat)},
              {"residual_x", real(r.residual_x)},
              {"residual_y", real(r.residual_y)},
              {"converged", r.converged},
              {"reduced", r.reduced},
              {"map_certificate", to_json(r.map_certificate)},
              {"trace", to_json(r.trace)}};
}

}  // namespace proxpair::io
