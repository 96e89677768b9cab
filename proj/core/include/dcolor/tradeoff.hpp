#pragma once

#include <cstdint>

#include "dcolor/coloring.hpp"
#include "dcolor/engine.hpp"
#include "dcolor/graph.hpp"
#include "dcolor/recolor.hpp"
#include "dcolor/verify.hpp"

namespace dcolor {

struct TradeoffStats {
  int branch = 0;            // 1 small-t, 2 nested split; 0 edgeless shortcut
  std::int64_t p = 0, q = 0; // split parameters
  int levels_full = 0;       // nested full-width split levels (branch 2)
  std::int64_t p_prime = 0;  // width of the last split level (branch 2)
  std::int64_t lambda_z = 0; // per-class degree bound
  std::int64_t classes = 0;
  int planned_rounds = 0;    // schedule length, initial coloring excluded
  std::int64_t planned_palette = 0;
};

struct TradeoffResult {
  Coloring coloring;
  RunResult run; // initial coloring and pipeline combined
  LinialResult linial;
  TradeoffStats stats;
  BoundReport report;
};

// Palette/time tradeoff: split the graph into t^2 classes of degree around
// 2*max_degree/t (one wide split for small t, nested splits otherwise),
// color every class in parallel with the recursion on a private palette
// stripe, and return the strided union.  No global reduction afterwards.
// Preconditions: 2 <= t <= floor(max_degree^(1-eps)); edgeless graphs skip
// the range check and take color 1 everywhere.
TradeoffResult tradeoff_color(const Graph& g, std::int64_t t, double eps = 0.25);

} // namespace dcolor
