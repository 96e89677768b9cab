#pragma once

#include "dcolor/coloring.hpp"
#include "dcolor/engine.hpp"
#include "dcolor/graph.hpp"

namespace dcolor {

struct RefineResult {
  Coloring coloring;
  RunResult run;
};

// Two-stage refinement of a defective chi-coloring into a p^2-coloring.
// Stage 1 resolves in increasing color order: a vertex colored c picks, in
// round c, the candidate in 1..p least used among smaller-colored
// neighbors' announced picks (ties to the smallest), and announces it.
// Stage 2 mirrors this in decreasing order at round chi+1-c.  The rounds
// are fixed by the colors alone: everything a vertex has heard by its pick
// round is exactly the announcements of the neighbors it must avoid,
// because same-colored neighbors announce in the same round and arrive a
// round late.  Output color (Psi-1)*p + psi; defect grows by at most
// floor(max_degree/p); at most chi+1 rounds.
//
// Precondition checked up front: phi's measured defect must not exceed its
// declared defect_bound.
RefineResult refine(const Graph& g, const Coloring& phi, int p);

} // namespace dcolor
