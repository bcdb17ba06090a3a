#pragma once

#include "proxpair/problem.hpp"

#include <string>
#include <vector>

namespace proxpair {

struct Fixture {
  std::string name;  ///< file stem
  ProblemSpec spec;
};

/// example1-dim4, example2-linf, semisharp-counterexample-linf,
/// parallel-segments-l2, reflection-bpp, rotation-fixedpoint.
std::vector<Fixture> canonical_fixtures();
ProblemSpec fixture(const std::string& name);

/// Polytope inscribed in the unit sphere of R^3: `longitudes` meridians and
/// latitude rings every 180/`rings` degrees plus the poles.
Points sphere_polytope(int longitudes, int rings);
/// Hausdorff distance bound between the unit ball of R^3 and sphere_polytope.
double sphere_polytope_error(int longitudes, int rings);

/// Writes <dir>/<name>.json for every canonical fixture; returns the paths.
/// Output is byte-identical across runs.
std::vector<std::string> emit_fixtures(const std::string& directory);

}  // namespace proxpair
