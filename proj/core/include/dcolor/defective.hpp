#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dcolor/coloring.hpp"
#include "dcolor/engine.hpp"
#include "dcolor/graph.hpp"

namespace dcolor {

struct DefectiveIterationPlan {
  std::int64_t chi = 0;  // palette entering the iteration
  std::int64_t h = 0;    // number of color sets, max(floor(chi/q), 1)
  std::int64_t wmax = 0; // widest set width, chi - (h-1)*q
  int window = 0;        // rounds the iteration occupies, wmax + 1
};

// The full iteration schedule for one defective-color run, computable by
// every vertex from (chi0, p, q) alone.  While chi > p^2: split the palette
// into h consecutive sets of width q (the last up to 2q-1), refine each set
// in parallel with parameter p inside the shared window, recombine as
// phi'_j + (j-1)p^2, and set chi := h*p^2.
struct DefectivePlan {
  std::int64_t p = 0, q = 0, chi0 = 0;
  std::vector<DefectiveIterationPlan> iters;
  std::int64_t final_palette = 0;

  int total_rounds() const;
  int defect_added(int max_degree) const; // iterations * floor(max_degree/p)

  // Throws std::invalid_argument unless p >= 1 and q > p^2.
  static DefectivePlan compute(std::int64_t chi0, std::int64_t p, std::int64_t q);
};

struct DefIterSend {
  int stage = 0; // 1 or 2
  std::int64_t pick = 0;
};

struct DefIterSends {
  int count = 0;
  std::array<DefIterSend, 2> send{};
};

// One iteration as seen by a single vertex.  The caller owns message
// transport: it feeds announcements via hear() (adjacency position, stage,
// sender's set, sender's pick) before calling at_round(), broadcasts
// whatever at_round() returns, and at the final window round calls
// recombine() for the next color.  Cross-set neighbors with equal
// recombined colors are reported as failures there; same-set collisions
// are the defect this procedure is allowed to produce.
class DefIterVertex {
 public:
  DefIterVertex(const DefectiveIterationPlan& it, std::int64_t p, std::int64_t q,
                std::int64_t phi, int degree);

  int window() const { return it_.window; }
  std::int64_t set_index() const { return j_; }

  void hear(int pos, int stage, std::int64_t j, std::int64_t pick, StepContext& ctx);
  DefIterSends at_round(int r, StepContext& ctx);
  std::int64_t recombine(StepContext& ctx) const;

 private:
  std::int64_t pick(const std::vector<int>& cnt, StepContext& ctx) const;

  DefectiveIterationPlan it_;
  std::int64_t p_ = 0, q_ = 0;
  std::int64_t j_ = 0;     // own set
  std::int64_t sigma_ = 0; // set-local input color in 1..width
  std::int64_t width_ = 0; // q, or wmax for the last set
  int pick1_round_ = 0, pick2_round_ = 0;
  std::int64_t psi_ = 0, Psi_ = 0;
  std::vector<int> cnt1_, cnt2_;
  struct Heard {
    std::int64_t j = 0, pick1 = 0, pick2 = 0;
  };
  std::vector<Heard> nb_;
};

struct DefectiveResult {
  Coloring coloring;
  RunResult run;
  DefectivePlan plan;
};

// Runs the full plan on the whole graph, seeded by the given coloring
// (colors must lie in 1..seed.palette).  Output palette p^2 when at least
// one iteration runs; declared defect grows by plan.defect_added.
DefectiveResult defective_color(const Graph& g, std::int64_t p, std::int64_t q,
                                const Coloring& seed);

} // namespace dcolor
