#pragma once

#include "proxpair/body.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace proxpair {

/// One level of a shrinking construction: the pair's diameter, distance and
/// gap delta - d against the geometric bound c^n (delta_0 - d).
struct TraceLevel {
  int level = 0;
  double delta = 0.0;
  double d = 0.0;
  double gap = 0.0;
  double bound = 0.0;
  bool ok = true;
  std::string note;
  std::optional<std::pair<ConvexBody, ConvexBody>> snapshot;
};

struct ShrinkTrace {
  std::vector<TraceLevel> levels;
  double c_used = 0.0;
  bool converged = false;
  std::string outcome;

  bool all_ok() const {
    for (const auto& l : levels) {
      if (!l.ok) return false;
    }
    return true;
  }
};

}  // namespace proxpair
