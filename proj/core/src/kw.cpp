#include "dcolor/kw.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "dcolor/verify.hpp"

namespace dcolor {

namespace {

constexpr int kTagColor = 1;

std::vector<std::int64_t> stage_palettes(std::int64_t m, int deg_bound) {
  const std::int64_t target = deg_bound + 1;
  std::vector<std::int64_t> seq{m};
  while (seq.back() > target) {
    const std::int64_t blocks = (seq.back() + 2 * target - 1) / (2 * target);
    seq.push_back(blocks * target);
  }
  return seq;
}

std::vector<Color> neighbor_snapshot(const Graph& g, const Coloring& c, VertexId v) {
  std::vector<Color> out;
  const auto nbs = g.neighbors(v);
  out.reserve(nbs.size());
  for (VertexId u : nbs) out.push_back(c[u]);
  return out;
}

int neighbor_pos(const std::span<const VertexId>& nbs, VertexId source) {
  const auto it = std::lower_bound(nbs.begin(), nbs.end(), source);
  return static_cast<int>(it - nbs.begin());
}

class KwProgram : public VertexProgram {
 public:
  KwProgram(int stages, int deg_bound, Color own, std::vector<Color> nbcolor)
      : stages_(stages), t_(deg_bound + 1), own_(own), nbcolor_(std::move(nbcolor)) {}

  void init(StepContext&) override {
    if (stages_ == 0) done_ = true;
  }

  void step(StepContext& ctx) override {
    const auto nbs = ctx.self().neighbors;
    for (const Message& m : ctx.inbox())
      nbcolor_[static_cast<std::size_t>(neighbor_pos(nbs, m.source))] = m.vals[0];

    const int stage = (ctx.round() - 1) / t_ + 1;
    const int sr = (ctx.round() - 1) % t_ + 1;
    if (sr == 1 && stage > 1) {
      // previous stage finished; pack blocks locally, for self and for the
      // stored neighbor view (the same arithmetic everywhere)
      own_ = packed(own_, ctx);
      for (Color& c : nbcolor_) c = packed(c, ctx);
    }

    const std::int64_t B = 2 * t_;
    const std::int64_t b = (own_ - 1) / B + 1;
    const std::int64_t ib = own_ - (b - 1) * B;
    if (ib == t_ + sr) {
      std::vector<char> used(static_cast<std::size_t>(t_) + 1, 0);
      for (Color c : nbcolor_) {
        if ((c - 1) / B + 1 != b) continue;
        const std::int64_t cib = c - (b - 1) * B;
        if (cib >= 1 && cib <= t_) used[static_cast<std::size_t>(cib)] = 1;
      }
      std::int64_t pick = 0;
      for (std::int64_t c = 1; c <= t_; ++c)
        if (!used[static_cast<std::size_t>(c)]) { pick = c; break; }
      if (pick == 0) ctx.fail("no free in-block color");
      own_ = (b - 1) * B + pick;
    }
    ctx.broadcast(kTagColor, {own_});

    if (ctx.round() == stages_ * t_) {
      own_ = packed(own_, ctx);
      done_ = true;
    }
  }

  bool finished() const override { return done_; }
  std::int64_t output() const override { return own_; }

 private:
  Color packed(Color c, StepContext& ctx) const {
    const std::int64_t B = 2 * t_;
    const std::int64_t b = (c - 1) / B + 1;
    const std::int64_t ib = c - (b - 1) * B;
    if (ib > t_) ctx.fail("in-block color " + std::to_string(ib) + " survived its stage");
    return (b - 1) * t_ + ib;
  }

  int stages_;
  std::int64_t t_;
  Color own_;
  std::vector<Color> nbcolor_;
  bool done_ = false;
};

class SeqProgram : public VertexProgram {
 public:
  SeqProgram(int rounds, int deg_bound, Color own, std::vector<Color> nbcolor)
      : rounds_(rounds), t_(deg_bound + 1), own_(own), nbcolor_(std::move(nbcolor)) {}

  void init(StepContext&) override {
    if (rounds_ == 0) done_ = true;
  }

  void step(StepContext& ctx) override {
    const auto nbs = ctx.self().neighbors;
    for (const Message& m : ctx.inbox())
      nbcolor_[static_cast<std::size_t>(neighbor_pos(nbs, m.source))] = m.vals[0];
    if (own_ == t_ + ctx.round()) {
      std::vector<char> used(static_cast<std::size_t>(t_) + 1, 0);
      for (Color c : nbcolor_)
        if (c >= 1 && c <= t_) used[static_cast<std::size_t>(c)] = 1;
      std::int64_t pick = 0;
      for (std::int64_t c = 1; c <= t_; ++c)
        if (!used[static_cast<std::size_t>(c)]) { pick = c; break; }
      if (pick == 0) ctx.fail("no free color");
      own_ = pick;
      ctx.broadcast(kTagColor, {own_});
    }
    if (ctx.round() == rounds_) done_ = true;
  }

  bool finished() const override { return done_; }
  std::int64_t output() const override { return own_; }

 private:
  int rounds_;
  std::int64_t t_;
  Color own_;
  std::vector<Color> nbcolor_;
  bool done_ = false;
};

void validate_reduce_input(const Graph& g, const Coloring& input, int deg_bound) {
  if (input.n != g.n()) throw std::invalid_argument("reduce: coloring size mismatch");
  if (deg_bound < g.max_degree())
    throw std::invalid_argument("reduce: degree bound " + std::to_string(deg_bound) +
                                " below max degree " + std::to_string(g.max_degree()));
  if (!check_legal(g, input).empty())
    throw std::invalid_argument("reduce: input coloring is not legal");
}

Coloring collect(const Graph& g, const RunResult& r, std::int64_t palette) {
  Coloring c;
  c.n = g.n();
  c.color.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  for (VertexId v = 1; v <= g.n(); ++v) c[v] = r.outputs[v];
  c.palette = palette;
  return c;
}

} // namespace

ReduceResult kw_reduce(const Graph& g, const Coloring& input, int deg_bound) {
  validate_reduce_input(g, input, deg_bound);
  ReduceResult out;
  const auto seq = stage_palettes(input.palette, deg_bound);
  out.stages = static_cast<int>(seq.size()) - 1;
  out.run = run(g, [&](VertexId v) {
    return std::make_unique<KwProgram>(out.stages, deg_bound, input[v],
                                       neighbor_snapshot(g, input, v));
  });
  out.coloring = collect(g, out.run, seq.back());
  return out;
}

ReduceResult sequential_reduce(const Graph& g, const Coloring& input, int deg_bound) {
  validate_reduce_input(g, input, deg_bound);
  ReduceResult out;
  const int rounds =
      static_cast<int>(std::max<std::int64_t>(0, input.palette - (deg_bound + 1)));
  out.stages = rounds > 0 ? 1 : 0;
  out.run = run(g, [&](VertexId v) {
    return std::make_unique<SeqProgram>(rounds, deg_bound, input[v],
                                        neighbor_snapshot(g, input, v));
  });
  out.coloring = collect(g, out.run,
                         std::min<std::int64_t>(input.palette, deg_bound + 1));
  return out;
}

} // namespace dcolor
