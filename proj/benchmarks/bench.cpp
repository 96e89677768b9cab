#include <benchmark/benchmark.h>

#include <memory>

#include "dcolor/cover_free.hpp"
#include "dcolor/delta.hpp"
#include "dcolor/engine.hpp"
#include "dcolor/graph.hpp"
#include "dcolor/kw.hpp"
#include "dcolor/recolor.hpp"
#include "dcolor/verify.hpp"

using namespace dcolor;

namespace {

Graph regular_graph(VertexId n, int d) {
  GraphSpec sp;
  sp.kind = GraphKind::Regular;
  sp.n = n;
  sp.degree = d;
  sp.seed = 7;
  return generate(sp);
}

// Pure transport load: every vertex broadcasts its id for a fixed number
// of rounds, so the engine cost is delivery plus bookkeeping.
class FloodProgram : public VertexProgram {
 public:
  void init(StepContext&) override {}
  void step(StepContext& ctx) override {
    std::int64_t sink = 0;
    for (const Message& m : ctx.inbox()) sink += m.vals[0];
    benchmark::DoNotOptimize(sink);
    if (ctx.round() <= 8) {
      ctx.broadcast(0, {ctx.self().id});
    } else {
      done_ = true;
    }
  }
  bool finished() const override { return done_; }
  std::int64_t output() const override { return 0; }

 private:
  bool done_ = false;
};

void BM_engine_flood(benchmark::State& state) {
  Graph g = regular_graph(state.range(0), 8);
  std::int64_t messages = 0;
  for (auto _ : state) {
    RunResult r = run(g, [](VertexId) { return std::make_unique<FloodProgram>(); });
    messages = r.messages_sent;
    benchmark::DoNotOptimize(r.rounds_used);
  }
  state.SetItemsProcessed(state.iterations() * messages);
}
BENCHMARK(BM_engine_flood)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_family_sets(benchmark::State& state) {
  const std::int64_t want = state.range(0);
  for (auto _ : state) {
    CoverFreeFamily f = build_family(2, want);
    std::size_t total = 0;
    for (std::int64_t i = 1; i <= want; ++i) total += f.set(i).size();
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * want);
}
BENCHMARK(BM_family_sets)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_initial_coloring(benchmark::State& state) {
  Graph g = regular_graph(state.range(0), 8);
  for (auto _ : state) {
    LinialResult r = linial_coloring(g);
    benchmark::DoNotOptimize(r.coloring.color.data());
  }
  state.SetItemsProcessed(state.iterations() * g.n());
}
BENCHMARK(BM_initial_coloring)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_color_delta_plus_one(benchmark::State& state) {
  Graph g = regular_graph(state.range(0), 8);
  for (auto _ : state) {
    DeltaPlusOneResult r = color_delta_plus_one(g);
    benchmark::DoNotOptimize(r.coloring.color.data());
  }
  state.SetItemsProcessed(state.iterations() * g.n());
}
BENCHMARK(BM_color_delta_plus_one)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_kw_reduce(benchmark::State& state) {
  Graph g = regular_graph(state.range(0), 8);
  Coloring seed = linial_coloring(g).coloring;
  for (auto _ : state) {
    ReduceResult r = kw_reduce(g, seed, g.max_degree());
    benchmark::DoNotOptimize(r.coloring.color.data());
  }
  state.SetItemsProcessed(state.iterations() * g.n());
}
BENCHMARK(BM_kw_reduce)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
