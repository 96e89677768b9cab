#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "corpus.hpp"
#include "dcolor/tradeoff.hpp"
#include "dcolor/verify.hpp"

using namespace dcolor;

namespace {

Graph make(GraphKind kind, VertexId n, int degree = 0, std::uint64_t seed = 0) {
  GraphSpec sp;
  sp.kind = kind;
  sp.n = n;
  sp.degree = degree;
  sp.seed = seed;
  return generate(sp);
}

} // namespace

TEST_CASE("regular(1024, d=64), t=2: one wide split") {
  Graph g = make(GraphKind::Regular, 1024, 64, 7);
  TradeoffResult r = tradeoff_color(g, 2);
  CHECK(r.stats.branch == 1);
  CHECK(r.stats.p == 2);
  CHECK(r.stats.q == 22);
  CHECK(r.stats.lambda_z == 64);
  CHECK(r.stats.classes == 4);
  CHECK(r.run.rounds_used == 360);
  CHECK(r.coloring.palette == 260);
  CHECK(check_legal(g, r.coloring).empty());
}

TEST_CASE("regular(1024, d=64), t=4: nested splits") {
  Graph g = make(GraphKind::Regular, 1024, 64, 7);
  TradeoffResult r = tradeoff_color(g, 4);
  CHECK(r.stats.branch == 2);
  CHECK(r.stats.p == 2);
  CHECK(r.stats.q == 8);
  CHECK(r.stats.lambda_z == 32);
  CHECK(r.stats.classes == 16);
  CHECK(r.run.rounds_used == 315);
  CHECK(r.coloring.palette == 528);
  CHECK(check_legal(g, r.coloring).empty());
}

TEST_CASE("regular(1024, d=64), t=8: more classes, smaller degree bound") {
  Graph g = make(GraphKind::Regular, 1024, 64, 7);
  TradeoffResult r = tradeoff_color(g, 8);
  CHECK(r.stats.lambda_z == 16);
  CHECK(r.stats.classes == 64);
  CHECK(r.run.rounds_used == 324);
  CHECK(r.coloring.palette == 1088);
  CHECK(check_legal(g, r.coloring).empty());
}

TEST_CASE("palette always matches the plan") {
  Graph g = make(GraphKind::Regular, 256, 16, 7);
  for (std::int64_t t : {2, 4}) {
    CAPTURE(t);
    TradeoffResult r = tradeoff_color(g, t);
    CHECK(check_legal(g, r.coloring).empty());
    CHECK(r.coloring.palette == r.stats.planned_palette);
    CHECK(r.run.rounds_used ==
          r.linial.run.rounds_used + r.stats.planned_rounds);
  }
}

TEST_CASE("t outside the admissible range is rejected") {
  Graph g = make(GraphKind::Regular, 1024, 64, 7);
  CHECK_THROWS_AS(tradeoff_color(g, 1), std::invalid_argument);
  CHECK_THROWS_AS(tradeoff_color(g, 23), std::invalid_argument);
  Graph c = make(GraphKind::Cycle, 8);
  // max_degree 2 leaves an empty range 2..1
  CHECK_THROWS_AS(tradeoff_color(c, 2), std::invalid_argument);
  CHECK_THROWS_AS(tradeoff_color(g, 2, 1.0), std::invalid_argument);
}

TEST_CASE("edgeless graphs shortcut to a single color") {
  GraphSpec sp;
  sp.kind = GraphKind::Gnp;
  sp.n = 9;
  sp.edge_prob = 0.0;
  Graph g = generate(sp);
  TradeoffResult r = tradeoff_color(g, 5);
  CHECK(r.stats.branch == 0);
  CHECK(r.run.rounds_used == 0);
  CHECK(r.coloring.palette == 1);
  for (VertexId v = 1; v <= 9; ++v) CHECK(r.coloring[v] == 1);
}
