#pragma once

#include <cstdint>
#include <vector>

#include "dcolor/coloring.hpp"
#include "dcolor/cover_free.hpp"
#include "dcolor/defective.hpp"
#include "dcolor/engine.hpp"
#include "dcolor/graph.hpp"

// Internal to the library.  The recursive coloring and the degree/time
// tradeoff both compile to a flat list of ops with absolute round budgets,
// executed by one vertex program.  All vertices advance through the list in
// lockstep, so the active op is a global function of the round; messages
// carry the sender's class-path prefix and are ignored across classes.

namespace dcolor {
namespace pipeline {

struct Op {
  enum class Kind {
    DefIter,          // one defective-split iteration window
    Recolor,          // two-round set-family recolor inside the class
    Announce,         // one round: broadcast the reduce seed color
    KwStage,          // deg_bound+1 rounds of block halving
    Shift,            // zero rounds: stride the class index into the result
    ClassFromSeed,    // zero rounds: seed palette already within p^2
    ResultFromLambda, // zero rounds: working color already within bounds
  };

  Kind kind = Kind::ResultFromLambda;
  int rounds = 0;
  int prefix_len = 0; // path slots that scope this op's messages

  // DefIter / ClassFromSeed
  DefectiveIterationPlan it;
  std::int64_t p = 0, q = 0;
  bool first_iter = false;
  bool last_iter = false;
  int seed_slot = -1;       // -1 seeds from lambda, else from path[slot]
  std::int64_t seed_chi = 0;
  int write_slot = -1;

  // Recolor
  const CoverFreeFamily* family = nullptr;

  // Announce / KwStage
  bool source_lambda = false; // announce lambda instead of the shifted result
  std::int64_t kw_t = 0;      // deg bound + 1 for the level
  int kw_stage = 0;
  bool kw_last = false;
  std::int64_t check_bound = -1; // announce: class degree limit, -1 skips

  // Shift
  std::int64_t stride = 0;
  int slot_begin = 0;
  int slot_count = 0;
};

struct OpProgram {
  std::vector<Op> ops;
  std::vector<std::int64_t> slot_radix; // class count per path slot
  int total_rounds = 0;
  std::int64_t out_palette = 0;

  // First compiled level's shape, for reporting.
  int levels = 0;
  bool top_degenerate = false;
  std::int64_t top_k = 0, top_q = 0, top_d = 0;

  void finish(); // sums op rounds into total_rounds
};

// One full defective-color run (all its iterations) as ops.  Claims the next
// path slot with radix p^2 and writes the class index there.  seed_slot as
// in Op.  Message prefix is everything before the new slot.
void append_def_level(OpProgram& P, std::int64_t chi, std::int64_t p, std::int64_t q,
                      int seed_slot, std::int64_t seed_chi);

// Recursive level: split, recolor when it shrinks the palette, recurse,
// shift, reduce.  Degenerate levels reduce directly.  Returns the palette
// the level's output is declared in (at most big_lambda + 1).
std::int64_t compile_delta_level(OpProgram& P, std::int64_t big_lambda, int depth,
                                 std::int64_t chi, double eps);

RunResult run_pipeline(const Graph& g, const OpProgram& P, const Coloring& lambda,
                       const RunConfig& cfg = engine_defaults());

RunResult combine_runs(const RunResult& first, const RunResult& second);

} // namespace pipeline
} // namespace dcolor
