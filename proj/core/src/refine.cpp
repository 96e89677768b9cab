#include "dcolor/refine.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "dcolor/verify.hpp"

namespace dcolor {

namespace {

constexpr int kTagStage1 = 2;
constexpr int kTagStage2 = 3;

// Least-used candidate in 1..p, ties to the smallest.
int least_used(const std::vector<int>& count) {
  int best = 1;
  for (int c = 2; c < static_cast<int>(count.size()); ++c)
    if (count[c] < count[best]) best = c;
  return best;
}

class RefineProgram : public VertexProgram {
 public:
  RefineProgram(std::int64_t chi, int p, Color phi) : chi_(chi), p_(p), phi_(phi) {}

  void init(StepContext& ctx) override {
    if (phi_ < 1 || phi_ > chi_)
      ctx.fail("input color " + std::to_string(phi_) + " not in 1.." + std::to_string(chi_));
    cnt1_.assign(static_cast<std::size_t>(p_) + 1, 0);
    cnt2_.assign(static_cast<std::size_t>(p_) + 1, 0);
    pick1_round_ = static_cast<int>(phi_);
    pick2_round_ = static_cast<int>(chi_ + 1 - phi_);
  }

  void step(StepContext& ctx) override {
    for (const Message& m : ctx.inbox()) {
      const std::int64_t v = m.vals[0];
      if (v < 1 || v > p_) ctx.fail("stage pick " + std::to_string(v) + " out of range");
      if (m.tag == kTagStage1 && psi_ == 0) ++cnt1_[static_cast<std::size_t>(v)];
      if (m.tag == kTagStage2 && Psi_ == 0) ++cnt2_[static_cast<std::size_t>(v)];
    }
    if (ctx.round() == pick1_round_) {
      psi_ = pick(cnt1_, ctx);
      ctx.broadcast(kTagStage1, {psi_});
    }
    if (ctx.round() == pick2_round_) {
      Psi_ = pick(cnt2_, ctx);
      ctx.broadcast(kTagStage2, {Psi_});
    }
    if (ctx.round() >= std::max(pick1_round_, pick2_round_)) done_ = true;
  }

  bool finished() const override { return done_; }
  std::int64_t output() const override { return (Psi_ - 1) * p_ + psi_; }

 private:
  std::int64_t pick(const std::vector<int>& cnt, StepContext& ctx) const {
    int heard = 0;
    for (int c = 1; c <= p_; ++c) heard += cnt[static_cast<std::size_t>(c)];
    const int choice = least_used(cnt);
    // pigeonhole: the least-used candidate occurs at most floor(heard/p) times
    if (cnt[static_cast<std::size_t>(choice)] > heard / p_)
      ctx.fail("least-used count " + std::to_string(cnt[static_cast<std::size_t>(choice)]) +
               " exceeds pigeonhole bound " + std::to_string(heard / p_));
    return choice;
  }

  std::int64_t chi_;
  int p_;
  Color phi_;
  std::vector<int> cnt1_, cnt2_;
  int pick1_round_ = 0, pick2_round_ = 0;
  std::int64_t psi_ = 0, Psi_ = 0;
  bool done_ = false;
};

} // namespace

RefineResult refine(const Graph& g, const Coloring& phi, int p) {
  if (p < 1) throw std::invalid_argument("refine: need p >= 1");
  if (phi.n != g.n()) throw std::invalid_argument("refine: coloring size mismatch");
  const DefectInfo info = check_defect(g, phi);
  if (info.defect > phi.defect_bound)
    throw std::invalid_argument("refine: input defect " + std::to_string(info.defect) +
                                " exceeds declared bound " + std::to_string(phi.defect_bound));
  RefineResult out;
  out.run = run(g, [&](VertexId v) {
    return std::make_unique<RefineProgram>(phi.palette, p, phi[v]);
  });
  out.coloring.n = g.n();
  out.coloring.color.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  for (VertexId v = 1; v <= g.n(); ++v) out.coloring[v] = out.run.outputs[v];
  out.coloring.palette = static_cast<std::int64_t>(p) * p;
  out.coloring.defect_bound = phi.defect_bound + g.max_degree() / p;
  return out;
}

} // namespace dcolor
