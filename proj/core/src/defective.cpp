#include "dcolor/defective.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace dcolor {

int DefectivePlan::total_rounds() const {
  int r = 0;
  for (const auto& it : iters) r += it.window;
  return r;
}

int DefectivePlan::defect_added(int max_degree) const {
  return static_cast<int>(iters.size()) * static_cast<int>(max_degree / p);
}

DefectivePlan DefectivePlan::compute(std::int64_t chi0, std::int64_t p, std::int64_t q) {
  if (p < 1) throw std::invalid_argument("defective: need p >= 1");
  if (q <= p * p) throw std::invalid_argument("defective: need q > p^2");
  if (chi0 < 1) throw std::invalid_argument("defective: need chi0 >= 1");
  DefectivePlan plan;
  plan.p = p;
  plan.q = q;
  plan.chi0 = chi0;
  std::int64_t chi = chi0;
  while (chi > p * p) {
    DefectiveIterationPlan it;
    it.chi = chi;
    it.h = std::max<std::int64_t>(chi / q, 1);
    it.wmax = chi - (it.h - 1) * q;
    it.window = static_cast<int>(it.wmax) + 1;
    plan.iters.push_back(it);
    chi = it.h * p * p;
  }
  plan.final_palette = plan.iters.empty() ? chi0 : p * p;
  return plan;
}

DefIterVertex::DefIterVertex(const DefectiveIterationPlan& it, std::int64_t p,
                             std::int64_t q, std::int64_t phi, int degree)
    : it_(it), p_(p), q_(q) {
  j_ = std::min((phi + q - 1) / q, it.h);
  sigma_ = phi - (j_ - 1) * q;
  width_ = (j_ < it.h) ? q : it.wmax;
  pick1_round_ = static_cast<int>(sigma_);
  pick2_round_ = static_cast<int>(width_ + 1 - sigma_);
  cnt1_.assign(static_cast<std::size_t>(p) + 1, 0);
  cnt2_.assign(static_cast<std::size_t>(p) + 1, 0);
  nb_.assign(static_cast<std::size_t>(degree), {});
}

void DefIterVertex::hear(int pos, int stage, std::int64_t j, std::int64_t pick,
                         StepContext& ctx) {
  if (j < 1 || j > it_.h) ctx.fail("heard set index " + std::to_string(j) + " out of range");
  if (pick < 1 || pick > p_) ctx.fail("heard pick " + std::to_string(pick) + " out of range");
  Heard& h = nb_[static_cast<std::size_t>(pos)];
  h.j = j;
  if (stage == 1) {
    h.pick1 = pick;
    if (j == j_ && psi_ == 0) ++cnt1_[static_cast<std::size_t>(pick)];
  } else if (stage == 2) {
    h.pick2 = pick;
    if (j == j_ && Psi_ == 0) ++cnt2_[static_cast<std::size_t>(pick)];
  } else {
    ctx.fail("heard stage " + std::to_string(stage));
  }
}

std::int64_t DefIterVertex::pick(const std::vector<int>& cnt, StepContext& ctx) const {
  int heard = 0;
  std::size_t best = 1;
  for (std::size_t c = 1; c < cnt.size(); ++c) {
    heard += cnt[c];
    if (cnt[c] < cnt[best]) best = c;
  }
  if (cnt[best] > heard / static_cast<int>(p_))
    ctx.fail("least-used count " + std::to_string(cnt[best]) +
             " exceeds pigeonhole bound " + std::to_string(heard / static_cast<int>(p_)));
  return static_cast<std::int64_t>(best);
}

DefIterSends DefIterVertex::at_round(int r, StepContext& ctx) {
  DefIterSends out;
  if (r == pick1_round_) {
    psi_ = pick(cnt1_, ctx);
    out.send[out.count++] = {1, psi_};
  }
  if (r == pick2_round_) {
    Psi_ = pick(cnt2_, ctx);
    out.send[out.count++] = {2, Psi_};
  }
  return out;
}

std::int64_t DefIterVertex::recombine(StepContext& ctx) const {
  if (psi_ == 0 || Psi_ == 0) ctx.fail("recombine before both picks");
  const std::int64_t own = (Psi_ - 1) * p_ + psi_ + (j_ - 1) * p_ * p_;
  for (std::size_t pos = 0; pos < nb_.size(); ++pos) {
    const Heard& h = nb_[pos];
    if (h.j == 0 || h.j == j_) continue;
    if (h.pick1 == 0 || h.pick2 == 0)
      ctx.fail("neighbor announced only one stage by the window end");
    const std::int64_t theirs = (h.pick2 - 1) * p_ + h.pick1 + (h.j - 1) * p_ * p_;
    if (theirs == own)
      ctx.fail("recombined color " + std::to_string(own) +
               " collides across sets " + std::to_string(j_) + " and " + std::to_string(h.j));
  }
  if (own < 1 || own > it_.h * p_ * p_)
    ctx.fail("recombined color " + std::to_string(own) + " outside 1.." +
             std::to_string(it_.h * p_ * p_));
  return own;
}

namespace {

constexpr int kTagStage1 = 2;
constexpr int kTagStage2 = 3;

class DefectiveProgram : public VertexProgram {
 public:
  DefectiveProgram(const DefectivePlan& plan, Color phi) : plan_(plan), phi_(phi) {}

  void init(StepContext& ctx) override {
    if (phi_ < 1 || phi_ > plan_.chi0)
      ctx.fail("seed color " + std::to_string(phi_) + " not in 1.." +
               std::to_string(plan_.chi0));
    if (plan_.iters.empty()) done_ = true;
  }

  void step(StepContext& ctx) override {
    if (cur_ == nullptr)
      cur_ = std::make_unique<DefIterVertex>(plan_.iters[iter_], plan_.p, plan_.q, phi_,
                                             ctx.self().degree);
    const auto nbs = ctx.self().neighbors;
    for (const Message& m : ctx.inbox()) {
      const int stage = (m.tag == kTagStage1) ? 1 : (m.tag == kTagStage2) ? 2 : 0;
      if (stage == 0) ctx.fail("unexpected message tag " + std::to_string(m.tag));
      const auto it = std::lower_bound(nbs.begin(), nbs.end(), m.source);
      cur_->hear(static_cast<int>(it - nbs.begin()), stage, m.vals[0], m.vals[1], ctx);
    }
    const int local = ctx.round() - iter_start_;
    DefIterSends sends = cur_->at_round(local, ctx);
    for (int i = 0; i < sends.count; ++i)
      ctx.broadcast(sends.send[i].stage == 1 ? kTagStage1 : kTagStage2,
                    {cur_->set_index(), sends.send[i].pick});
    if (local == cur_->window()) {
      phi_ = cur_->recombine(ctx);
      iter_start_ = ctx.round();
      cur_.reset();
      if (++iter_ == plan_.iters.size()) done_ = true;
    }
  }

  bool finished() const override { return done_; }
  std::int64_t output() const override { return phi_; }
  int state_tag() const override { return static_cast<int>(iter_); }

 private:
  const DefectivePlan& plan_;
  Color phi_;
  std::size_t iter_ = 0;
  int iter_start_ = 0;
  std::unique_ptr<DefIterVertex> cur_;
  bool done_ = false;
};

} // namespace

DefectiveResult defective_color(const Graph& g, std::int64_t p, std::int64_t q,
                                const Coloring& seed) {
  if (seed.n != g.n()) throw std::invalid_argument("defective: coloring size mismatch");
  if (p > std::max(g.max_degree(), 1))
    throw std::invalid_argument("defective: p exceeds max degree");
  DefectiveResult out;
  out.plan = DefectivePlan::compute(seed.palette, p, q);
  out.run = run(g, [&](VertexId v) {
    return std::make_unique<DefectiveProgram>(out.plan, seed[v]);
  });
  out.coloring.n = g.n();
  out.coloring.color.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  for (VertexId v = 1; v <= g.n(); ++v) out.coloring[v] = out.run.outputs[v];
  out.coloring.palette = out.plan.final_palette;
  out.coloring.defect_bound = seed.defect_bound + out.plan.defect_added(g.max_degree());
  return out;
}

} // namespace dcolor
