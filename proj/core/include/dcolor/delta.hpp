#pragma once

#include <cstdint>

#include "dcolor/coloring.hpp"
#include "dcolor/engine.hpp"
#include "dcolor/graph.hpp"
#include "dcolor/recolor.hpp"
#include "dcolor/verify.hpp"

namespace dcolor {

struct DeltaStats {
  bool degenerate = false;      // top level went straight to the reduction
  std::int64_t k = 0, q = 0, d = 0; // top-level split parameters, 0 when degenerate
  int levels = 0;               // recursion levels compiled
  int planned_rounds = 0;       // schedule length; the run must match it
  std::int64_t planned_palette = 0;
};

struct DeltaResult {
  Coloring coloring;
  RunResult run;
  DeltaStats stats;
};

// Recursive reduction of a legal psi to a (big_lambda+1)-coloring.  Depth 1
// (or parameters that leave no room for a split) reduces directly; otherwise
// the palette is split into k^2 classes of degree at most big_lambda/k,
// each class is recolored through a set family when that shrinks the
// palette, the recursion colors all classes in parallel, and a strided
// recombination plus one reduction finishes the level.  Preconditions:
// psi legal, big_lambda >= max degree, depth >= 1, eps in (0,1).
DeltaResult delta_color(const Graph& g, std::int64_t big_lambda, int depth,
                        const Coloring& psi, double eps = 0.25);

struct DeltaPlusOneResult {
  Coloring coloring;
  RunResult run; // initial coloring and recursion combined
  LinialResult linial;
  DeltaStats stats;
  BoundReport report;
};

// End-to-end (max_degree+1)-coloring: identifier-based initial coloring,
// then the recursion at depth max(1, log*(max_degree)).
DeltaPlusOneResult color_delta_plus_one(const Graph& g, double eps = 0.25);

} // namespace dcolor
