#include "dcolor/recolor.hpp"

#include <algorithm>
#include <memory>

#include "dcolor/numeric.hpp"

namespace dcolor {

namespace {

constexpr int kTagColor = 1;

class RecolorProgram : public VertexProgram {
 public:
  RecolorProgram(const CoverFreeFamily& f, bool member, Color lambda)
      : f_(f), member_(member), color_(lambda) {}

  void init(StepContext& ctx) override {
    if (!member_) {
      done_ = true;
      return;
    }
    if (color_ < 1 || color_ > f_.set_count)
      ctx.fail("color " + std::to_string(color_) + " outside family capacity " +
               std::to_string(f_.set_count));
  }

  void step(StepContext& ctx) override {
    if (ctx.round() == 1) {
      ctx.broadcast(kTagColor, {color_});
      return;
    }
    std::vector<std::int64_t> nb;
    nb.reserve(ctx.inbox().size());
    for (const Message& m : ctx.inbox()) {
      if (m.vals[0] == color_) ctx.fail("member neighbor " + std::to_string(m.source) +
                                        " shares color index");
      nb.push_back(m.vals[0]);
    }
    if (static_cast<int>(nb.size()) > f_.A)
      ctx.fail("has " + std::to_string(nb.size()) + " member neighbors, family allows " +
               std::to_string(f_.A));
    std::int64_t pick = pick_from_family(f_, color_, nb);
    if (pick == 0) ctx.fail("no free ground element");
    color_ = pick;
    done_ = true;
  }

  bool finished() const override { return done_; }
  std::int64_t output() const override { return color_; }
  int state_tag() const override { return member_ ? 1 : 0; }

 private:
  const CoverFreeFamily& f_;
  bool member_;
  Color color_;
  bool done_ = false;
};

} // namespace

RecolorResult recolor_once(const Graph& g, const CoverFreeFamily& f,
                           const std::vector<char>& member, const Coloring& lambda) {
  RecolorResult out;
  out.run = run(g, [&](VertexId v) {
    return std::make_unique<RecolorProgram>(f, member[static_cast<std::size_t>(v)] != 0,
                                            lambda[v]);
  });
  out.coloring.n = g.n();
  out.coloring.color.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  out.coloring.palette = f.ground_size;
  for (VertexId v = 1; v <= g.n(); ++v) {
    out.coloring[v] = out.run.outputs[v];
    if (!member[static_cast<std::size_t>(v)])
      out.coloring.palette = std::max(out.coloring.palette, out.coloring[v]);
  }
  return out;
}

std::vector<std::int64_t> linial_palette_chain(int max_degree, std::int64_t start) {
  std::vector<std::int64_t> chain{start};
  if (max_degree < 1) return chain;
  for (;;) {
    std::int64_t chi = chain.back();
    const CoverFreeFamily& f = cached_family(max_degree, chi);
    if (f.ground_size >= chi) return chain;
    chain.push_back(f.ground_size);
  }
}

namespace {

// Pipelined chain walker: round 1 announces the identifier, round t+1
// applies chain step t and announces the result, final round skips the
// announce and finishes.
class LinialProgram : public VertexProgram {
 public:
  void init(StepContext& ctx) override {
    color_ = ctx.self().id;
    chain_ = linial_palette_chain(ctx.self().max_degree, ctx.self().n);
    if (chain_.size() == 1) done_ = true; // nothing to gain
  }

  void step(StepContext& ctx) override {
    const int last_round = static_cast<int>(chain_.size()); // iterations + 1
    if (ctx.round() > 1) {
      const std::size_t t = static_cast<std::size_t>(ctx.round()) - 2;
      const CoverFreeFamily& f = cached_family(ctx.self().max_degree, chain_[t]);
      if (color_ > f.set_count)
        ctx.fail("color " + std::to_string(color_) + " outside family capacity " +
                 std::to_string(f.set_count));
      std::vector<std::int64_t> nb;
      nb.reserve(ctx.inbox().size());
      for (const Message& m : ctx.inbox()) {
        if (m.vals[0] == color_)
          ctx.fail("neighbor " + std::to_string(m.source) + " shares color");
        nb.push_back(m.vals[0]);
      }
      std::int64_t pick = pick_from_family(f, color_, nb);
      if (pick == 0) ctx.fail("no free ground element");
      color_ = pick;
    }
    if (ctx.round() < last_round) {
      ctx.broadcast(kTagColor, {color_});
    } else {
      done_ = true;
    }
  }

  bool finished() const override { return done_; }
  std::int64_t output() const override { return color_; }

 private:
  Color color_ = 0;
  std::vector<std::int64_t> chain_;
  bool done_ = false;
};

class ConstantOneProgram : public VertexProgram {
 public:
  void init(StepContext&) override {}
  void step(StepContext&) override {}
  bool finished() const override { return true; }
  std::int64_t output() const override { return 1; }
};

} // namespace

LinialResult linial_coloring(const Graph& g) {
  LinialResult out;
  const int dmax = g.max_degree();
  if (dmax == 0) {
    out.run = run(g, [](VertexId) { return std::make_unique<ConstantOneProgram>(); });
    out.coloring.n = g.n();
    out.coloring.color.assign(static_cast<std::size_t>(g.n()) + 1, 1);
    out.coloring.color[0] = 0;
    out.coloring.palette = 1;
    out.c = 1.0; // degenerate: single color, no squared-degree budget to speak of
    return out;
  }
  auto chain = linial_palette_chain(dmax, g.n());
  out.iterations = static_cast<int>(chain.size()) - 1;
  out.run = run(g, [](VertexId) { return std::make_unique<LinialProgram>(); });
  out.coloring.n = g.n();
  out.coloring.color.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  out.coloring.palette = chain.back();
  for (VertexId v = 1; v <= g.n(); ++v) out.coloring[v] = out.run.outputs[v];
  out.c = static_cast<double>(out.coloring.palette) /
          (static_cast<double>(dmax) * static_cast<double>(dmax));
  return out;
}

} // namespace dcolor
