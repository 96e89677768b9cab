#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <string>

#include "corpus.hpp"
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

Coloring colors(std::vector<Color> c, std::int64_t palette) {
  Coloring out;
  out.n = static_cast<VertexId>(c.size());
  out.color.assign(1, 0);
  out.color.insert(out.color.end(), c.begin(), c.end());
  out.palette = palette;
  return out;
}

double find_bound(const std::vector<NamedBound>& bounds, const std::string& tag) {
  for (const auto& b : bounds)
    if (b.tag == tag) return b.value;
  throw std::runtime_error("missing tag " + tag);
}

} // namespace

TEST_CASE("check_legal reports monochromatic edges") {
  Graph g = make(GraphKind::Path, 3);
  CHECK(check_legal(g, colors({1, 2, 1}, 2)).empty());
  auto bad = check_legal(g, colors({1, 1, 2}, 2));
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].u == 1);
  CHECK(bad[0].v == 2);
  CHECK_THROWS_AS(check_legal(g, identity_coloring(2)), std::invalid_argument);
}

TEST_CASE("check_defect measures the worst vertex") {
  Graph cyc = make(GraphKind::Cycle, 4);
  DefectInfo all_one = check_defect(cyc, colors({1, 1, 1, 1}, 1));
  CHECK(all_one.defect == 2);
  CHECK(all_one.palette_used == 1);
  Graph k4 = make(GraphKind::Complete, 4);
  DefectInfo halves = check_defect(k4, colors({1, 1, 2, 2}, 2));
  CHECK(halves.defect == 1);
  CHECK(halves.palette_used == 2);
  CHECK(check_defect(k4, identity_coloring(4)).defect == 0);
}

TEST_CASE("check_mis flags adjacency and uncovered vertices") {
  Graph g = make(GraphKind::Path, 3);
  CHECK(check_mis(g, {0, 1, 0, 1}).empty());
  CHECK(check_mis(g, {0, 0, 1, 0}).empty());

  auto adj = check_mis(g, {0, 1, 1, 0});
  REQUIRE_FALSE(adj.empty());
  CHECK(adj[0].what == "adjacent members");
  CHECK(adj[0].u == 1);
  CHECK(adj[0].v == 2);

  auto empty_set = check_mis(g, {0, 0, 0, 0});
  REQUIRE(empty_set.size() == 3);
  CHECK(empty_set[0].what == "uncovered vertex");

  CHECK_THROWS_AS(check_mis(g, {0, 1, 0}), std::invalid_argument);
}

TEST_CASE("greedy reference oracle") {
  Graph k4 = make(GraphKind::Complete, 4);
  Coloring c = greedy_reference_coloring(k4);
  for (VertexId v = 1; v <= 4; ++v) CHECK(c[v] == v);
  CHECK(c.palette == 4);

  Graph c5 = make(GraphKind::Cycle, 5);
  Coloring odd = greedy_reference_coloring(c5);
  CHECK(odd[1] == 1);
  CHECK(odd[2] == 2);
  CHECK(odd[3] == 1);
  CHECK(odd[4] == 2);
  CHECK(odd[5] == 3);
  CHECK(odd.palette == 3);
  CHECK(check_legal(c5, odd).empty());
}

TEST_CASE("greedy is legal on every sample graph") {
  for (const auto* e : dcolor_tests::corpus_sample()) {
    CAPTURE(e->name);
    Coloring c = greedy_reference_coloring(e->graph);
    CHECK(check_legal(e->graph, c).empty());
    CHECK(c.palette <= e->graph.max_degree() + 1);
  }
}

TEST_CASE("block-halving round budget for a 2-regular 4-coloring") {
  BoundParams bp;
  bp.max_degree = 2;
  bp.chi = 4;
  auto b = bound_formulas("kw", bp);
  CHECK(find_bound(b, "rounds<=(maxdeg+1)*ceil(log2(chi/(maxdeg+1)))") == 3.0);
  CHECK(find_bound(b, "palette<=maxdeg+1") == 3.0);
}

TEST_CASE("two-stage refinement budget for a 4-coloring") {
  BoundParams bp;
  bp.max_degree = 3;
  bp.chi = 4;
  bp.p = 2;
  auto b = bound_formulas("refine", bp);
  CHECK(find_bound(b, "rounds<=chi+1") == 5.0);
  CHECK(find_bound(b, "palette<=p^2") == 4.0);
  CHECK(find_bound(b, "defect<=seed+floor(maxdeg/p)") == 1.0);
}

TEST_CASE("defective iteration budget shrinks by q/p^2 per pass") {
  BoundParams bp;
  bp.max_degree = 2;
  bp.chi = 64;
  bp.p = 1;
  bp.q = 4;
  auto b = bound_formulas("defective", bp);
  CHECK(find_bound(b, "iterations<=ceil(log_{q/p^2}(chi))") == 3.0);
  CHECK(find_bound(b, "defect<=seed+iters*floor(maxdeg/p)") == 6.0);
  CHECK(find_bound(b, "rounds<=iters*(2q+1)") == 27.0);
}

TEST_CASE("initial-coloring budget tracks log*") {
  BoundParams bp;
  bp.n = 1024;
  bp.max_degree = 2;
  auto b = bound_formulas("linial", bp);
  CHECK(find_bound(b, "rounds<=log*(n)+3") == 6.0);
  CHECK(find_bound(b, "palette<=chain_end") == 25.0);
}

TEST_CASE("recursion budget uses the iterated log") {
  BoundParams bp;
  bp.max_degree = 8;
  bp.depth = 2;
  auto b = bound_formulas("delta", bp);
  CHECK(find_bound(b, "palette<=maxdeg+1") == 9.0);
  // (2+2) * 9 * max(2, log log 8) = 72
  CHECK(find_bound(b, "rounds<=tau") == doctest::Approx(72.0));
}

TEST_CASE("tradeoff and set-selection budgets") {
  BoundParams bp;
  bp.max_degree = 64;
  bp.t = 4;
  CHECK(find_bound(bound_formulas("tradeoff", bp), "palette<=K*maxdeg*t") ==
        doctest::Approx(563.2));
  BoundParams mp;
  mp.max_degree = 8;
  mp.chi = 9;
  auto mb = bound_formulas("mis", mp);
  CHECK(find_bound(mb, "rounds<=input_palette") == 9.0);
  CHECK(find_bound(mb, "input_palette<=maxdeg+1") == 9.0);
}

TEST_CASE("unknown algorithm id is rejected") {
  CHECK_THROWS_AS(bound_formulas("nope", BoundParams{}), std::invalid_argument);
}

TEST_CASE("add_check tolerates 1e-9 rounding") {
  BoundReport r;
  r.add_check("close", 5.0 + 5e-10, 5.0);
  r.add_check("over", 5.0 + 2e-9, 5.0);
  CHECK(r.checks[0].pass);
  CHECK_FALSE(r.checks[1].pass);
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("report serialization is stable") {
  BoundReport r;
  r.algorithm = "linial";
  r.n = 5;
  r.max_degree = 2;
  r.rounds = 2;
  r.palette = 3;
  r.messages = 10;
  r.max_bits = 6;
  r.add_check("rounds<=log*(n)+3", 2, 5);
  r.add_check("ratio", 1.5, 1.25);
  CHECK(r.to_json() ==
        "{\"algorithm\":\"linial\",\"params\":\"\",\"n\":5,\"max_degree\":2,"
        "\"rounds\":2,\"palette\":3,\"defect\":0,\"messages\":10,\"max_bits\":6,"
        "\"checks\":[{\"tag\":\"rounds<=log*(n)+3\",\"measured\":2,\"bound\":5,"
        "\"pass\":true},{\"tag\":\"ratio\",\"measured\":1.5,\"bound\":1.25,"
        "\"pass\":false}],\"all_pass\":false}");
}
