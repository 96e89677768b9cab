#pragma once

#include "dcolor/coloring.hpp"
#include "dcolor/engine.hpp"
#include "dcolor/graph.hpp"

namespace dcolor {

struct ReduceResult {
  Coloring coloring;
  RunResult run;
  int stages = 0;
};

// Iterative block-halving reduction of a legal m-coloring to deg_bound+1
// colors.  Each stage splits the palette into consecutive blocks of
// 2(deg_bound+1) colors; within a block, round r retires in-block color
// deg_bound+1+r greedily to a free in-block color in 1..deg_bound+1, every
// vertex broadcasting its current color each round; the stage ends with a
// purely local renumbering that packs each block to deg_bound+1 colors.
// Exactly stages*(deg_bound+1) rounds, stages = ceil(log2(m/(deg_bound+1))).
// Neighbor colors are supplied at init, matching the model assumption that
// the input coloring is mutually known.
ReduceResult kw_reduce(const Graph& g, const Coloring& input, int deg_bound);

// Sequential oracle: in round r the vertices colored deg_bound+1+r pick the
// smallest free color in 1..deg_bound+1; exactly max(0, m-(deg_bound+1))
// rounds.  Only recoloring vertices send.
ReduceResult sequential_reduce(const Graph& g, const Coloring& input, int deg_bound);

} // namespace dcolor
