#pragma once

#include <vector>

#include "dcolor/coloring.hpp"
#include "dcolor/cover_free.hpp"
#include "dcolor/engine.hpp"
#include "dcolor/graph.hpp"

namespace dcolor {

struct RecolorResult {
  Coloring coloring;
  RunResult run;
};

// One-shot subgraph recolor: members announce their color index, then take
// the smallest ground element of set(index) not covered by member-neighbor
// sets.  One communication round; the engine counts two, because the pick
// happens in the round after the announcements land.  Non-members keep
// their color.  Preconditions (index within family, at most A member
// neighbors, adjacent indices distinct) are enforced as vertex failures.
RecolorResult recolor_once(const Graph& g, const CoverFreeFamily& f,
                           const std::vector<char>& member, const Coloring& lambda);

// Declared-palette chain for the identifier-halving stage: starting at
// chi = start, repeatedly move to ground(family(A = max_degree, chi)) while
// that is strictly smaller.  Returns the full sequence, first = start.
std::vector<std::int64_t> linial_palette_chain(int max_degree, std::int64_t start);

struct LinialResult {
  Coloring coloring;
  RunResult run;
  int iterations = 0;
  double c = 0.0; // achieved palette / max_degree^2
};

// Identifier-based initial coloring: run the chain above with one recolor
// per round, pipelined so iterations+1 rounds suffice (0 rounds when the
// chain is empty; edgeless graphs get color 1 everywhere).
LinialResult linial_coloring(const Graph& g);

} // namespace dcolor
