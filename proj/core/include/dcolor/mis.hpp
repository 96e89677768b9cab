#pragma once

#include <vector>

#include "dcolor/coloring.hpp"
#include "dcolor/engine.hpp"
#include "dcolor/graph.hpp"

namespace dcolor {

struct MisRunResult {
  std::vector<char> member; // 1-indexed, 1 = in the set
  RunResult run;
};

// Color classes join in color order: in round c the vertices colored c join
// unless a neighbor joined earlier, then announce the decision.  Requires a
// legal coloring (checked up front); takes max present color rounds, at
// most the declared palette.
MisRunResult mis_from_coloring(const Graph& g, const Coloring& coloring);

} // namespace dcolor
