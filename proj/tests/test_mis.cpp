#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "corpus.hpp"
#include "dcolor/delta.hpp"
#include "dcolor/mis.hpp"
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

TEST_CASE("path(3) with colors (1,2,1): endpoints join") {
  Graph g = make(GraphKind::Path, 3);
  Coloring c;
  c.n = 3;
  c.color = {0, 1, 2, 1};
  c.palette = 2;
  MisRunResult r = mis_from_coloring(g, c);
  CHECK(r.member[1] == 1);
  CHECK(r.member[2] == 0);
  CHECK(r.member[3] == 1);
  CHECK(r.run.rounds_used == 2);
  CHECK(check_mis(g, r.member).empty());
}

TEST_CASE("color one always joins, so round count hits max present color") {
  Graph g = make(GraphKind::Cycle, 5);
  Coloring c = greedy_reference_coloring(g);
  REQUIRE(c.palette == 3);
  MisRunResult r = mis_from_coloring(g, c);
  CHECK(r.run.rounds_used == 3);
  CHECK(check_mis(g, r.member).empty());
}

TEST_CASE("edgeless graph: everyone joins in one round") {
  GraphSpec sp;
  sp.kind = GraphKind::Gnp;
  sp.n = 6;
  sp.edge_prob = 0.0;
  Graph g = generate(sp);
  Coloring c;
  c.n = 6;
  c.color = {0, 1, 1, 1, 1, 1, 1};
  c.palette = 1;
  MisRunResult r = mis_from_coloring(g, c);
  CHECK(r.run.rounds_used == 1);
  for (VertexId v = 1; v <= 6; ++v) CHECK(r.member[v] == 1);
}

TEST_CASE("illegal input coloring is rejected") {
  Graph g = make(GraphKind::Path, 2);
  Coloring c;
  c.n = 2;
  c.color = {0, 1, 1};
  c.palette = 1;
  CHECK_THROWS_AS(mis_from_coloring(g, c), std::invalid_argument);
  CHECK_THROWS_AS(mis_from_coloring(g, identity_coloring(3)),
                  std::invalid_argument);
}

TEST_CASE("valid independent set from every sample coloring") {
  for (const auto* e : dcolor_tests::corpus_sample()) {
    const Graph& g = e->graph;
    CAPTURE(e->name);
    DeltaPlusOneResult dp = color_delta_plus_one(g);
    MisRunResult r = mis_from_coloring(g, dp.coloring);
    CHECK(check_mis(g, r.member).empty());
    CHECK(r.run.rounds_used <= dp.coloring.palette);
    CHECK(dp.coloring.palette <= g.max_degree() + 1);
  }
}
