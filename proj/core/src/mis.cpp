#include "dcolor/mis.hpp"

#include <memory>
#include <sstream>
#include <stdexcept>

#include "dcolor/verify.hpp"

namespace dcolor {

namespace {

constexpr int kTagDecide = 1;

// Waits until the round matching its color, joins iff no neighbor joined in
// an earlier round, announces 0/1, and stops.  Announcements from smaller
// colors arrive strictly before the local decision round.
class MisProgram : public VertexProgram {
public:
  explicit MisProgram(Color c) : color_(c) {}

  void init(StepContext&) override {}

  void step(StepContext& ctx) override {
    for (const Message& m : ctx.inbox()) {
      if (m.tag != kTagDecide)
        ctx.fail("unexpected tag in decision phase");
      if (m.vals[0] == 1)
        blocked_ = true;
    }
    if (ctx.round() < color_)
      return;
    joined_ = blocked_ ? 0 : 1;
    ctx.broadcast(kTagDecide, {joined_});
    done_ = true;
  }

  bool finished() const override { return done_; }
  std::int64_t output() const override { return joined_; }

private:
  Color color_ = 0;
  bool blocked_ = false;
  bool done_ = false;
  std::int64_t joined_ = 0;
};

} // namespace

MisRunResult mis_from_coloring(const Graph& g, const Coloring& coloring) {
  if (coloring.n != g.n())
    throw std::invalid_argument("mis_from_coloring: coloring size mismatch");
  for (VertexId v = 1; v <= g.n(); ++v) {
    if (coloring[v] < 1 || coloring[v] > coloring.palette)
      throw std::invalid_argument("mis_from_coloring: color out of range");
  }
  auto bad = check_legal(g, coloring);
  if (!bad.empty()) {
    std::ostringstream os;
    os << "mis_from_coloring: input coloring is not legal, " << bad.size()
       << " monochromatic edge(s), first " << bad[0].u << "-" << bad[0].v;
    throw std::invalid_argument(os.str());
  }

  ProgramFactory factory = [&](VertexId v) {
    return std::unique_ptr<VertexProgram>(new MisProgram(coloring[v]));
  };
  MisRunResult out;
  out.run = run(g, factory);
  out.member.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  for (VertexId v = 1; v <= g.n(); ++v)
    out.member[static_cast<std::size_t>(v)] =
        out.run.outputs[static_cast<std::size_t>(v)] == 1 ? 1 : 0;
  return out;
}

} // namespace dcolor
