// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// Criteria run against the full generated corpus plus a handful of larger
// fixed instances; determinism is exercised through the installed CLI
// binary (path injected at build time).

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "dcolor/defective.hpp"
#include "dcolor/delta.hpp"
#include "dcolor/kw.hpp"
#include "dcolor/mis.hpp"
#include "dcolor/numeric.hpp"
#include "dcolor/recolor.hpp"
#include "dcolor/refine.hpp"
#include "dcolor/tradeoff.hpp"
#include "dcolor/verify.hpp"

namespace fs = std::filesystem;
using namespace dcolor;
using dcolor_tests::CorpusEntry;

namespace {

struct Criterion {
  int id = 0;
  std::string note;
  std::vector<std::string> fails;
  void fail(const std::string& s) {
    if (fails.size() < 6) fails.push_back(s);
  }
};

bool finish(const Criterion& c) {
  std::string line = "criterion " + std::to_string(c.id);
  if (c.fails.empty()) {
    line += ": PASS";
    if (!c.note.empty()) line += " (" + c.note + ")";
  } else {
    line += ": FAIL - " + c.fails.front();
    if (c.fails.size() > 1)
      line += " (+" + std::to_string(c.fails.size() - 1) + " more)";
  }
  std::printf("%s\n", line.c_str());
  std::fflush(stdout);
  return c.fails.empty();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// Smallest I >= 0 with (q/p^2)^I >= chi.
std::int64_t iteration_bound(std::int64_t chi, std::int64_t p, std::int64_t q) {
  if (chi <= p * p) return 0;
  long double ratio = static_cast<long double>(q) / static_cast<long double>(p * p);
  long double cover = 1.0L;
  std::int64_t iters = 0;
  while (cover < static_cast<long double>(chi) && iters < 512) {
    cover *= ratio;
    ++iters;
  }
  return iters;
}

Graph make_regular(VertexId n, int d, std::uint64_t seed) {
  GraphSpec sp;
  sp.kind = GraphKind::Regular;
  sp.n = n;
  sp.degree = d;
  sp.seed = seed;
  return generate(sp);
}

Graph make_cycle(VertexId n) {
  GraphSpec sp;
  sp.kind = GraphKind::Cycle;
  sp.n = n;
  return generate(sp);
}

std::int64_t intersection_size(const std::vector<std::int64_t>& a,
                               const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return static_cast<std::int64_t>(out.size());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return "<missing " + p.string() + ">";
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Per-graph results shared between criteria.
struct GraphCache {
  const CorpusEntry* entry = nullptr;
  LinialResult linial;
  DeltaPlusOneResult dp;
};

} // namespace

int main() {
  const auto& corpus = dcolor_tests::corpus();
  std::vector<GraphCache> cache(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    cache[i].entry = &corpus[i];
    cache[i].linial = linial_coloring(corpus[i].graph);
    cache[i].dp = color_delta_plus_one(corpus[i].graph);
  }

  bool all = true;

  { // 1: corpus coverage and exact (max_degree+1)-coloring everywhere
    Criterion c{1};
    if (corpus.size() < 60)
      c.fail("corpus has only " + std::to_string(corpus.size()) + " graphs");
    std::map<std::string, int> family;
    std::set<int> regular_degrees;
    std::set<VertexId> gnp_sizes;
    for (const auto& e : corpus) {
      family[e.name.substr(0, e.name.find(':'))]++;
      if (e.name.rfind("regular:", 0) == 0) regular_degrees.insert(e.graph.max_degree());
      if (e.name.rfind("gnp:", 0) == 0) gnp_sizes.insert(e.graph.n());
    }
    for (const char* f : {"cycle", "path", "star", "grid", "complete", "regular", "gnp"})
      if (family[f] == 0) c.fail(std::string("no graphs in family ") + f);
    for (int d : {3, 8, 16, 32})
      if (!regular_degrees.count(d))
        c.fail("no regular graph of degree " + std::to_string(d));
    for (VertexId n : {64, 256, 512})
      if (!gnp_sizes.count(n))
        c.fail("no random graph on " + std::to_string(n) + " vertices");
    for (const auto& gc : cache) {
      const Graph& g = gc.entry->graph;
      if (!check_legal(g, gc.dp.coloring).empty())
        c.fail(gc.entry->name + ": coloring not legal");
      if (gc.dp.coloring.palette > g.max_degree() + 1)
        c.fail(gc.entry->name + ": palette " + std::to_string(gc.dp.coloring.palette) +
               " above max_degree+1");
    }
    c.note = std::to_string(corpus.size()) + " graphs";
    all &= finish(c);
  }

  { // 2: refinement bounds over seeds and p values
    Criterion c{2};
    int vectors = 0;
    for (const auto& e : corpus) {
      const Graph& g = e.graph;
      Coloring greedy = greedy_reference_coloring(g);
      std::vector<std::pair<Coloring, int>> vec;
      vec.emplace_back(greedy, 2);
      vec.emplace_back(greedy, 3);
      if (g.n() <= 128) vec.emplace_back(identity_coloring(g.n()), 2);
      for (const auto& [seed, p] : vec) {
        ++vectors;
        RefineResult rr = refine(g, seed, p);
        const std::string id = e.name + " p=" + std::to_string(p);
        if (rr.coloring.palette > static_cast<std::int64_t>(p) * p)
          c.fail(id + ": palette " + std::to_string(rr.coloring.palette));
        if (check_defect(g, rr.coloring).defect >
            seed.defect_bound + g.max_degree() / p)
          c.fail(id + ": defect above bound");
        if (rr.run.rounds_used > seed.palette + 1)
          c.fail(id + ": rounds " + std::to_string(rr.run.rounds_used));
      }
    }
    c.note = std::to_string(vectors) + " vectors";
    all &= finish(c);
  }

  { // 3: defective coloring bounds
    Criterion c{3};
    int vectors = 0;
    for (const auto& e : corpus) {
      const Graph& g = e.graph;
      for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{1, 3}, {2, 5}}) {
        if (p > g.max_degree()) continue; // precondition of the procedure
        ++vectors;
        DefectiveResult dr = defective_color(g, p, q, identity_coloring(g.n()));
        const std::string id = e.name + " p=" + std::to_string(p);
        if (dr.coloring.palette > p * p)
          c.fail(id + ": palette " + std::to_string(dr.coloring.palette));
        const auto iters = static_cast<std::int64_t>(dr.plan.iters.size());
        if (iters > iteration_bound(g.n(), p, q))
          c.fail(id + ": " + std::to_string(iters) + " iterations");
        if (check_defect(g, dr.coloring).defect >
            iters * (g.max_degree() / p))
          c.fail(id + ": defect above bound");
      }
    }
    c.note = std::to_string(vectors) + " vectors";
    all &= finish(c);
  }

  { // 4: block-halving reduction from the initial coloring
    Criterion c{4};
    for (const auto& gc : cache) {
      const Graph& g = gc.entry->graph;
      const Coloring& seed = gc.linial.coloring;
      ReduceResult rr = kw_reduce(g, seed, g.max_degree());
      const std::int64_t t = g.max_degree() + 1;
      if (!check_legal(g, rr.coloring).empty())
        c.fail(gc.entry->name + ": not legal");
      if (rr.coloring.palette > t)
        c.fail(gc.entry->name + ": palette " + std::to_string(rr.coloring.palette));
      if (rr.run.rounds_used > t * ceil_log2_ratio(seed.palette, t))
        c.fail(gc.entry->name + ": rounds " + std::to_string(rr.run.rounds_used));
    }
    all &= finish(c);
  }

  { // 5: exhaustive union-free verification of constructed families
    Criterion c{5};
    for (auto [A, k] : {std::pair<int, int>{1, 4},
                        {1, 200},
                        {2, 60},
                        {2, 120},
                        {3, 30},
                        {3, 50}}) {
      const CoverFreeFamily& f = cached_family(A, k);
      std::vector<std::vector<std::int64_t>> sets;
      const std::int64_t take = std::min<std::int64_t>(k, f.set_count);
      for (std::int64_t i = 1; i <= take; ++i) sets.push_back(f.set(i));
      if (!check_cover_free(sets, A))
        c.fail("family A=" + std::to_string(A) + " k=" + std::to_string(k) +
               " failed the exhaustive check");
    }
    for (auto [A, k] : {std::pair<int, int>{1, 200},
                        {2, 120},
                        {2, 200},
                        {3, 50},
                        {3, 200}}) {
      const CoverFreeFamily& f = cached_family(A, k);
      const std::int64_t take = std::min<std::int64_t>(200, f.set_count);
      for (std::int64_t i = 1; i <= take; ++i) {
        for (std::int64_t j = i + 1; j <= take; ++j) {
          if (intersection_size(f.set(i), f.set(j)) > f.d) {
            c.fail("family A=" + std::to_string(A) + " k=" + std::to_string(k) +
                   ": sets " + std::to_string(i) + "," + std::to_string(j) +
                   " intersect above d");
            break;
          }
        }
      }
    }
    all &= finish(c);
  }

  { // 6: initial coloring speed and palette on growing instances
    Criterion c{6};
    const int kRoundSlack = 3;
    double cmax = 0.0;
    std::vector<Graph> graphs;
    for (VertexId n : {64, 1024, 16384}) graphs.push_back(make_cycle(n));
    for (VertexId n : {64, 1024, 16384}) graphs.push_back(make_regular(n, 8, 7));
    for (const Graph& g : graphs) {
      LinialResult lr = linial_coloring(g);
      const std::string id = "n=" + std::to_string(g.n()) + " d=" +
                             std::to_string(g.max_degree());
      if (!check_legal(g, lr.coloring).empty()) c.fail(id + ": not legal");
      if (lr.run.rounds_used > log_star(g.n()) + kRoundSlack)
        c.fail(id + ": rounds " + std::to_string(lr.run.rounds_used));
      const double cv = static_cast<double>(lr.coloring.palette) /
                        (static_cast<double>(g.max_degree()) * g.max_degree());
      cmax = std::max(cmax, cv);
    }
    if (cmax > 7.0) c.fail("palette constant " + fmt(cmax) + " above 7");
    c.note = "round slack " + std::to_string(kRoundSlack) + ", max palette/maxdeg^2 = " + fmt(cmax);
    all &= finish(c);
  }

  { // 7: round growth as the degree doubles at fixed n
    Criterion c{7};
    std::map<int, std::int64_t> rounds;
    for (int d : {8, 16, 32, 64}) {
      Graph g = make_regular(1024, d, 7);
      DeltaPlusOneResult r = color_delta_plus_one(g);
      if (!check_legal(g, r.coloring).empty())
        c.fail("d=" + std::to_string(d) + ": not legal");
      if (r.coloring.palette > d + 1)
        c.fail("d=" + std::to_string(d) + ": palette " +
               std::to_string(r.coloring.palette));
      rounds[d] = r.run.rounds_used;
    }
    std::string ratios;
    for (int d : {16, 32}) {
      const double ratio = static_cast<double>(rounds[2 * d]) /
                           static_cast<double>(rounds[d]);
      if (!ratios.empty()) ratios += ", ";
      ratios += "R(" + std::to_string(2 * d) + ")/R(" + std::to_string(d) +
                ")=" + fmt(ratio);
      if (ratio > 2.75)
        c.fail("doubling ratio at d=" + std::to_string(d) + " is " + fmt(ratio));
    }
    const double span = static_cast<double>(rounds[64]) /
                        static_cast<double>(rounds[8]);
    if (span > 9.0) c.fail("R(64)/R(8) is " + fmt(span));
    c.note = ratios + ", R(64)/R(8)=" + fmt(span);
    all &= finish(c);
  }

  { // 8: palette/time tradeoff on a 64-regular graph
    Criterion c{8};
    const double K = 2.2;
    Graph g = make_regular(1024, 64, 7);
    std::int64_t prev_rounds = -1;
    std::string summary;
    for (std::int64_t t : {2, 4, 8}) {
      TradeoffResult r = tradeoff_color(g, t);
      const std::string id = "t=" + std::to_string(t);
      if (!check_legal(g, r.coloring).empty()) c.fail(id + ": not legal");
      if (static_cast<double>(r.coloring.palette) > K * 64.0 * static_cast<double>(t))
        c.fail(id + ": palette " + std::to_string(r.coloring.palette) +
               " above K*maxdeg*t");
      if (prev_rounds >= 0 &&
          static_cast<double>(r.run.rounds_used) >
              1.1 * static_cast<double>(prev_rounds))
        c.fail(id + ": rounds " + std::to_string(r.run.rounds_used) +
               " grew above 10% slack");
      prev_rounds = r.run.rounds_used;
      if (!summary.empty()) summary += ", ";
      summary += id + ":" + std::to_string(r.run.rounds_used) + "r/" +
                 std::to_string(r.coloring.palette) + "c";
    }
    c.note = "K=" + fmt(K) + "; " + summary;
    all &= finish(c);
  }

  { // 9: independent set construction from the final colorings
    Criterion c{9};
    for (const auto& gc : cache) {
      const Graph& g = gc.entry->graph;
      MisRunResult r = mis_from_coloring(g, gc.dp.coloring);
      if (!check_mis(g, r.member).empty())
        c.fail(gc.entry->name + ": set not independent or not maximal");
      if (r.run.rounds_used > gc.dp.coloring.palette)
        c.fail(gc.entry->name + ": rounds above input palette");
      if (gc.dp.coloring.palette > g.max_degree() + 1)
        c.fail(gc.entry->name + ": input palette above max_degree+1");
    }
    all &= finish(c);
  }

  { // 10: byte-identical CLI outputs under repetition and reversed stepping
    Criterion c{10};
    const std::string cli = DCOLOR_CLI_PATH;
    const fs::path base =
        fs::temp_directory_path() / ("dcolor_acc_" + std::to_string(getpid()));
    struct Case {
      std::string name;
      std::string args;
      std::vector<std::string> files;
    };
    const std::vector<Case> cases = {
        {"delta", "run --graph regular:64:8:7 --algo delta",
         {"metrics.json", "coloring.csv"}},
        {"kw", "run --graph cycle:33 --algo kw", {"metrics.json", "coloring.csv"}},
        {"defective", "run --graph cycle:64 --algo defective --p 1 --q 3",
         {"metrics.json", "coloring.csv"}},
        {"mis", "run --graph gnp:64:0.05:11 --algo mis",
         {"metrics.json", "coloring.csv", "mis.csv"}},
        {"refine", "run --graph grid:100 --algo refine --p 3",
         {"metrics.json", "coloring.csv"}},
    };
    std::error_code ec;
    for (const Case& cs : cases) {
      std::vector<fs::path> dirs;
      for (int i = 0; i < 3; ++i) dirs.push_back(base / (cs.name + std::to_string(i)));
      for (int i = 0; i < 3; ++i) {
        fs::create_directories(dirs[static_cast<std::size_t>(i)], ec);
        std::string cmd = "\"" + cli + "\" " + cs.args;
        if (i == 2) cmd += " --order reverse";
        cmd += " --out \"" + dirs[static_cast<std::size_t>(i)].string() +
               "\" > /dev/null 2>&1";
        const int raw = std::system(cmd.c_str());
        const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        if (code != 0 && code != 1) {
          c.fail(cs.name + ": run " + std::to_string(i) + " exited with " +
                 std::to_string(code));
        }
      }
      for (const std::string& f : cs.files) {
        const std::string first = slurp(dirs[0] / f);
        if (slurp(dirs[1] / f) != first)
          c.fail(cs.name + "/" + f + ": repeat run differs");
        if (slurp(dirs[2] / f) != first)
          c.fail(cs.name + "/" + f + ": reversed step order differs");
      }
    }
    fs::remove_all(base, ec);
    c.note = std::to_string(cases.size()) + " configs x 3 runs";
    all &= finish(c);
  }

  { // 11: parallel and sequential reducers agree with the greedy oracle
    Criterion c{11};
    for (const auto& gc : cache) {
      const Graph& g = gc.entry->graph;
      const std::int64_t t = g.max_degree() + 1;
      ReduceResult kw = kw_reduce(g, gc.linial.coloring, g.max_degree());
      ReduceResult seq = sequential_reduce(g, gc.linial.coloring, g.max_degree());
      if (!check_legal(g, kw.coloring).empty())
        c.fail(gc.entry->name + ": parallel result not legal");
      if (kw.coloring.palette > t)
        c.fail(gc.entry->name + ": parallel palette above max_degree+1");
      if (!check_legal(g, seq.coloring).empty())
        c.fail(gc.entry->name + ": sequential result not legal");
      if (seq.coloring.palette > t)
        c.fail(gc.entry->name + ": sequential palette above max_degree+1");
      Coloring greedy = greedy_reference_coloring(g);
      if (!check_legal(g, greedy).empty())
        c.fail(gc.entry->name + ": greedy oracle not legal");
      if (greedy.palette > t)
        c.fail(gc.entry->name + ": greedy palette above max_degree+1");
    }
    all &= finish(c);
  }

  return all ? 0 : 1;
}
