#include "dcolor/delta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>

#include "dcolor/cover_free.hpp"
#include "dcolor/numeric.hpp"
#include "pipeline.hpp"

namespace dcolor {
namespace pipeline {

namespace {

constexpr int kTagColor = 1;   // {prefix, color}
constexpr int kTagStage1 = 2;  // {prefix, set, pick}
constexpr int kTagStage2 = 3;
constexpr int kTagRecolor = 4; // {prefix, index}

constexpr std::size_t kMaxSlots = 12;

int neighbor_pos(std::span<const VertexId> nbs, VertexId source) {
  const auto it = std::lower_bound(nbs.begin(), nbs.end(), source);
  return static_cast<int>(it - nbs.begin());
}

// Same block ladder as the standalone reduction.
std::vector<std::int64_t> kw_stage_palettes(std::int64_t m, std::int64_t target) {
  std::vector<std::int64_t> seq{m};
  while (seq.back() > target) {
    const std::int64_t blocks = (seq.back() + 2 * target - 1) / (2 * target);
    seq.push_back(blocks * target);
  }
  return seq;
}

class PipelineProgram : public VertexProgram {
 public:
  PipelineProgram(const OpProgram& prog, Color lambda) : P_(prog), lambda_(lambda) {}

  void init(StepContext& ctx) override {
    if (lambda_ < 1)
      ctx.fail("seed color must be positive");
    advance_zero(ctx);
    if (opi_ == P_.ops.size())
      done_ = true;
  }

  void step(StepContext& ctx) override {
    const Op& op = P_.ops[opi_];
    const int local = ctx.round() - op_start_;
    switch (op.kind) {
    case Op::Kind::DefIter: step_def(op, local, ctx); break;
    case Op::Kind::Recolor: step_recolor(op, local, ctx); break;
    case Op::Kind::Announce: step_announce(op, ctx); break;
    case Op::Kind::KwStage: step_kw(op, local, ctx); break;
    default: ctx.fail("zero-round op reached step");
    }
    if (local == op.rounds) {
      ++opi_;
      op_start_ = ctx.round();
      advance_zero(ctx);
      if (opi_ == P_.ops.size())
        done_ = true;
    }
  }

  bool finished() const override { return done_; }
  std::int64_t output() const override { return result_; }
  int state_tag() const override { return static_cast<int>(opi_); }

 private:
  std::int64_t my_prefix(int len, StepContext& ctx) const {
    std::int64_t v = 0;
    for (int s = 0; s < len; ++s) {
      if (path_[static_cast<std::size_t>(s)] < 1)
        ctx.fail("class path unset at slot " + std::to_string(s));
      v = v * P_.slot_radix[static_cast<std::size_t>(s)] +
          (path_[static_cast<std::size_t>(s)] - 1);
    }
    return v;
  }

  void advance_zero(StepContext& ctx) {
    while (opi_ < P_.ops.size() && P_.ops[opi_].rounds == 0) {
      const Op& op = P_.ops[opi_];
      switch (op.kind) {
      case Op::Kind::Shift: {
        std::int64_t flat = 0;
        for (int s = op.slot_begin; s < op.slot_begin + op.slot_count; ++s) {
          if (path_[static_cast<std::size_t>(s)] < 1)
            ctx.fail("shift before class assignment at slot " + std::to_string(s));
          flat = flat * P_.slot_radix[static_cast<std::size_t>(s)] +
                 (path_[static_cast<std::size_t>(s)] - 1);
        }
        if (result_ < 1)
          ctx.fail("shift before a class result exists");
        result_ += op.stride * flat;
        break;
      }
      case Op::Kind::ClassFromSeed: {
        const std::int64_t seed =
            op.seed_slot >= 0 ? path_[static_cast<std::size_t>(op.seed_slot)] : lambda_;
        if (seed < 1 || seed > op.seed_chi)
          ctx.fail("class seed " + std::to_string(seed) + " outside 1.." +
                   std::to_string(op.seed_chi));
        path_[static_cast<std::size_t>(op.write_slot)] = seed;
        break;
      }
      case Op::Kind::ResultFromLambda:
        result_ = lambda_;
        break;
      default:
        ctx.fail("op kind cannot take zero rounds");
      }
      ++opi_;
    }
  }

  void step_def(const Op& op, int local, StepContext& ctx) {
    if (!def_) {
      if (op.first_iter) {
        def_phi_ =
            op.seed_slot >= 0 ? path_[static_cast<std::size_t>(op.seed_slot)] : lambda_;
        if (def_phi_ < 1 || def_phi_ > op.seed_chi)
          ctx.fail("split seed " + std::to_string(def_phi_) + " outside 1.." +
                   std::to_string(op.seed_chi));
      }
      def_ = std::make_unique<DefIterVertex>(op.it, op.p, op.q, def_phi_,
                                             ctx.self().degree);
    }
    const auto nbs = ctx.self().neighbors;
    const std::int64_t pref = my_prefix(op.prefix_len, ctx);
    for (const Message& m : ctx.inbox()) {
      const int stage = m.tag == kTagStage1 ? 1 : m.tag == kTagStage2 ? 2 : 0;
      if (stage == 0)
        ctx.fail("unexpected tag " + std::to_string(m.tag) + " in split phase");
      if (m.vals[0] != pref)
        continue;
      def_->hear(neighbor_pos(nbs, m.source), stage, m.vals[1], m.vals[2], ctx);
    }
    const DefIterSends sends = def_->at_round(local, ctx);
    for (int i = 0; i < sends.count; ++i)
      ctx.broadcast(sends.send[i].stage == 1 ? kTagStage1 : kTagStage2,
                    {pref, def_->set_index(), sends.send[i].pick});
    if (local == op.rounds) {
      def_phi_ = def_->recombine(ctx);
      def_.reset();
      if (op.last_iter) {
        if (def_phi_ < 1 ||
            def_phi_ > P_.slot_radix[static_cast<std::size_t>(op.write_slot)])
          ctx.fail("class index " + std::to_string(def_phi_) + " exceeds radix");
        path_[static_cast<std::size_t>(op.write_slot)] = def_phi_;
      }
    }
  }

  void step_recolor(const Op& op, int local, StepContext& ctx) {
    const std::int64_t pref = my_prefix(op.prefix_len, ctx);
    const CoverFreeFamily& f = *op.family;
    if (local == 1) {
      if (lambda_ > f.set_count)
        ctx.fail("family of " + std::to_string(f.set_count) +
                 " sets cannot host color " + std::to_string(lambda_));
      rec_excl_.clear();
      ctx.broadcast(kTagRecolor, {pref, lambda_});
      return;
    }
    for (const Message& m : ctx.inbox()) {
      if (m.tag != kTagRecolor)
        ctx.fail("unexpected tag " + std::to_string(m.tag) + " in recolor phase");
      if (m.vals[0] != pref)
        continue;
      if (m.vals[1] == lambda_)
        ctx.fail("equal color indices on an edge entering recolor");
      rec_excl_.push_back(m.vals[1]);
    }
    if (static_cast<std::int64_t>(rec_excl_.size()) > f.A)
      ctx.fail("class degree " + std::to_string(rec_excl_.size()) +
               " exceeds family tolerance " + std::to_string(f.A));
    const std::int64_t pick = pick_from_family(f, lambda_, rec_excl_);
    if (pick == 0)
      ctx.fail("recolor difference empty");
    lambda_ = pick;
  }

  void step_announce(const Op& op, StepContext& ctx) {
    cur_ = op.source_lambda ? lambda_ : result_;
    if (cur_ < 1)
      ctx.fail("announce without a color");
    const std::int64_t pref = my_prefix(op.prefix_len, ctx);
    ctx.broadcast(kTagColor, {pref, cur_});
    nbcolor_.assign(static_cast<std::size_t>(ctx.self().degree), 0);
    nbheard_.assign(static_cast<std::size_t>(ctx.self().degree), 0);
    pending_check_ = op.check_bound;
    pending_legal_ = true;
  }

  void step_kw(const Op& op, int local, StepContext& ctx) {
    const auto nbs = ctx.self().neighbors;
    const std::int64_t pref = my_prefix(op.prefix_len, ctx);
    for (const Message& m : ctx.inbox()) {
      if (m.tag != kTagColor)
        ctx.fail("unexpected tag " + std::to_string(m.tag) + " in reduce phase");
      if (m.vals[0] != pref)
        continue;
      const auto pos = static_cast<std::size_t>(neighbor_pos(nbs, m.source));
      nbcolor_[pos] = m.vals[1];
      nbheard_[pos] = 1;
    }
    if (pending_legal_) {
      // first round after the announce: the class neighborhood is now known
      std::int64_t cnt = 0;
      for (std::size_t i = 0; i < nbheard_.size(); ++i) {
        if (!nbheard_[i])
          continue;
        ++cnt;
        if (nbcolor_[i] == cur_)
          ctx.fail("equal colors on an edge entering reduce");
      }
      if (pending_check_ >= 0 && cnt > pending_check_)
        ctx.fail("class degree " + std::to_string(cnt) + " exceeds bound " +
                 std::to_string(pending_check_));
      pending_legal_ = false;
      pending_check_ = -1;
    }
    const std::int64_t t = op.kw_t;
    if (local == 1 && op.kw_stage > 0) {
      cur_ = kw_packed(cur_, t, ctx);
      for (std::size_t i = 0; i < nbcolor_.size(); ++i)
        if (nbheard_[i])
          nbcolor_[i] = kw_packed(nbcolor_[i], t, ctx);
    }
    const std::int64_t B = 2 * t;
    const std::int64_t b = (cur_ - 1) / B + 1;
    const std::int64_t ib = cur_ - (b - 1) * B;
    if (ib == t + local) {
      std::vector<char> used(static_cast<std::size_t>(t) + 1, 0);
      for (std::size_t i = 0; i < nbcolor_.size(); ++i) {
        if (!nbheard_[i])
          continue;
        const Color c = nbcolor_[i];
        if ((c - 1) / B + 1 != b)
          continue;
        const std::int64_t cib = c - (b - 1) * B;
        if (cib >= 1 && cib <= t)
          used[static_cast<std::size_t>(cib)] = 1;
      }
      std::int64_t pick = 0;
      for (std::int64_t c = 1; c <= t; ++c) {
        if (!used[static_cast<std::size_t>(c)]) {
          pick = c;
          break;
        }
      }
      if (pick == 0)
        ctx.fail("no free in-block color");
      cur_ = (b - 1) * B + pick;
    }
    ctx.broadcast(kTagColor, {pref, cur_});
    if (local == op.rounds && op.kw_last) {
      cur_ = kw_packed(cur_, t, ctx);
      result_ = cur_;
    }
  }

  Color kw_packed(Color c, std::int64_t t, StepContext& ctx) const {
    const std::int64_t B = 2 * t;
    const std::int64_t b = (c - 1) / B + 1;
    const std::int64_t ib = c - (b - 1) * B;
    if (ib > t)
      ctx.fail("in-block color " + std::to_string(ib) + " survived its stage");
    return (b - 1) * t + ib;
  }

  const OpProgram& P_;
  Color lambda_;
  std::int64_t result_ = 0;
  std::array<std::int64_t, kMaxSlots> path_{};
  std::size_t opi_ = 0;
  int op_start_ = 0;
  bool done_ = false;

  std::unique_ptr<DefIterVertex> def_;
  std::int64_t def_phi_ = 0;
  std::vector<std::int64_t> rec_excl_;
  std::int64_t cur_ = 0;
  std::vector<Color> nbcolor_;
  std::vector<char> nbheard_;
  std::int64_t pending_check_ = -1;
  bool pending_legal_ = false;
};

} // namespace

void OpProgram::finish() {
  total_rounds = 0;
  for (const Op& op : ops)
    total_rounds += op.rounds;
}

void append_def_level(OpProgram& P, std::int64_t chi, std::int64_t p, std::int64_t q,
                      int seed_slot, std::int64_t seed_chi) {
  const int prefix = static_cast<int>(P.slot_radix.size());
  const int slot = prefix;
  P.slot_radix.push_back(p * p);
  if (P.slot_radix.size() > kMaxSlots)
    throw std::logic_error("class path deeper than supported");
  const DefectivePlan plan = DefectivePlan::compute(chi, p, q);
  if (plan.iters.empty()) {
    Op op;
    op.kind = Op::Kind::ClassFromSeed;
    op.rounds = 0;
    op.seed_slot = seed_slot;
    op.seed_chi = seed_chi;
    op.write_slot = slot;
    P.ops.push_back(op);
    return;
  }
  for (std::size_t i = 0; i < plan.iters.size(); ++i) {
    Op op;
    op.kind = Op::Kind::DefIter;
    op.rounds = plan.iters[i].window;
    op.prefix_len = prefix;
    op.it = plan.iters[i];
    op.p = p;
    op.q = q;
    op.first_iter = i == 0;
    op.last_iter = i + 1 == plan.iters.size();
    op.seed_slot = seed_slot;
    op.seed_chi = seed_chi;
    op.write_slot = slot;
    P.ops.push_back(op);
  }
}

namespace {

void append_reduce(OpProgram& P, std::int64_t m, std::int64_t big_lambda, int prefix,
                   bool source_lambda) {
  const auto seq = kw_stage_palettes(m, big_lambda + 1);
  const int stages = static_cast<int>(seq.size()) - 1;
  if (stages == 0)
    return;
  Op a;
  a.kind = Op::Kind::Announce;
  a.rounds = 1;
  a.prefix_len = prefix;
  a.source_lambda = source_lambda;
  a.check_bound = big_lambda;
  P.ops.push_back(a);
  for (int s = 0; s < stages; ++s) {
    Op k;
    k.kind = Op::Kind::KwStage;
    k.rounds = static_cast<int>(big_lambda) + 1;
    k.prefix_len = prefix;
    k.kw_t = big_lambda + 1;
    k.kw_stage = s;
    k.kw_last = s + 1 == stages;
    P.ops.push_back(k);
  }
}

} // namespace

std::int64_t compile_delta_level(OpProgram& P, std::int64_t big_lambda, int depth,
                                 std::int64_t chi, double eps) {
  const int base = static_cast<int>(P.slot_radix.size());
  std::int64_t k = 0, q = 0;
  bool degenerate = true;
  if (depth >= 2 && big_lambda >= 2) {
    k = iterated_log(depth - 1, big_lambda);
    q = static_cast<std::int64_t>(
        std::floor(std::pow(static_cast<double>(big_lambda), eps) + 1e-9));
    if (k >= 2 && q > k * k)
      degenerate = false;
  }
  if (P.levels == 0) {
    P.top_degenerate = degenerate;
    P.top_k = degenerate ? 0 : k;
    P.top_q = degenerate ? 0 : q;
    P.top_d = degenerate ? 0 : big_lambda / k;
  }
  ++P.levels;

  if (degenerate) {
    if (chi > big_lambda + 1) {
      append_reduce(P, chi, big_lambda, base, /*source_lambda=*/true);
      return kw_stage_palettes(chi, big_lambda + 1).back();
    }
    Op op;
    op.kind = Op::Kind::ResultFromLambda;
    P.ops.push_back(op);
    return chi;
  }

  const std::int64_t d = big_lambda / k;
  const int slot = base;
  append_def_level(P, chi, k, q, /*seed_slot=*/-1, chi);

  std::int64_t chi_next = chi;
  const CoverFreeFamily& f = cached_family(static_cast<int>(d), chi);
  if (f.ground_size < chi) {
    Op r;
    r.kind = Op::Kind::Recolor;
    r.rounds = 2;
    r.prefix_len = base + 1;
    r.family = &f;
    P.ops.push_back(r);
    chi_next = f.ground_size;
  }

  compile_delta_level(P, d, depth - 1, chi_next, eps);

  Op sh;
  sh.kind = Op::Kind::Shift;
  sh.stride = d + 1;
  sh.slot_begin = slot;
  sh.slot_count = 1;
  P.ops.push_back(sh);

  const std::int64_t m = k * k * (d + 1);
  if (m > big_lambda + 1) {
    append_reduce(P, m, big_lambda, base, /*source_lambda=*/false);
    return kw_stage_palettes(m, big_lambda + 1).back();
  }
  return m;
}

RunResult run_pipeline(const Graph& g, const OpProgram& P, const Coloring& lambda,
                       const RunConfig& cfg) {
  return run(
      g,
      [&](VertexId v) {
        return std::make_unique<PipelineProgram>(P, lambda[v]);
      },
      cfg);
}

RunResult combine_runs(const RunResult& first, const RunResult& second) {
  RunResult r;
  r.rounds_used = first.rounds_used + second.rounds_used;
  r.messages_sent = first.messages_sent + second.messages_sent;
  r.max_message_bits = std::max(first.max_message_bits, second.max_message_bits);
  r.halted = first.halted && second.halted;
  r.outputs = second.outputs;
  return r;
}

} // namespace pipeline

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

Coloring collect_coloring(const Graph& g, const RunResult& r, std::int64_t palette) {
  Coloring c;
  c.n = g.n();
  c.color.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  for (VertexId v = 1; v <= g.n(); ++v)
    c[v] = r.outputs[static_cast<std::size_t>(v)];
  c.palette = palette;
  c.defect_bound = 0;
  return c;
}

} // namespace

DeltaResult delta_color(const Graph& g, std::int64_t big_lambda, int depth,
                        const Coloring& psi, double eps) {
  if (psi.n != g.n())
    throw std::invalid_argument("delta_color: coloring size mismatch");
  if (big_lambda < g.max_degree())
    throw std::invalid_argument("delta_color: degree bound " +
                                std::to_string(big_lambda) + " below max degree " +
                                std::to_string(g.max_degree()));
  if (depth < 1)
    throw std::invalid_argument("delta_color: depth must be >= 1");
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("delta_color: eps must lie in (0,1)");
  for (VertexId v = 1; v <= g.n(); ++v) {
    if (psi[v] < 1 || psi[v] > psi.palette)
      throw std::invalid_argument("delta_color: seed color out of range at vertex " +
                                  std::to_string(v));
  }
  if (!check_legal(g, psi).empty())
    throw std::invalid_argument("delta_color: seed coloring is not legal");

  pipeline::OpProgram P;
  P.out_palette = pipeline::compile_delta_level(P, big_lambda, depth, psi.palette, eps);
  P.finish();

  DeltaResult out;
  out.run = pipeline::run_pipeline(g, P, psi);
  if (out.run.rounds_used != P.total_rounds)
    throw std::logic_error("delta_color: schedule mismatch, planned " +
                           std::to_string(P.total_rounds) + " rounds, ran " +
                           std::to_string(out.run.rounds_used));
  out.coloring = collect_coloring(g, out.run, P.out_palette);
  out.stats.degenerate = P.top_degenerate;
  out.stats.k = P.top_k;
  out.stats.q = P.top_q;
  out.stats.d = P.top_d;
  out.stats.levels = P.levels;
  out.stats.planned_rounds = P.total_rounds;
  out.stats.planned_palette = P.out_palette;
  return out;
}

DeltaPlusOneResult color_delta_plus_one(const Graph& g, double eps) {
  DeltaPlusOneResult out;
  out.linial = linial_coloring(g);
  const int maxdeg = g.max_degree();
  const int depth = std::max(1, log_star(maxdeg));
  DeltaResult dr = delta_color(g, maxdeg, depth, out.linial.coloring, eps);
  out.coloring = std::move(dr.coloring);
  out.stats = dr.stats;
  out.run = pipeline::combine_runs(out.linial.run, dr.run);

  BoundReport& r = out.report;
  r.algorithm = "delta";
  r.params = "eps=" + fmt_double(eps) + ";depth=" + std::to_string(depth);
  r.n = g.n();
  r.max_degree = maxdeg;
  r.rounds = out.run.rounds_used;
  r.palette = out.coloring.palette;
  r.defect = check_defect(g, out.coloring).defect;
  r.messages = out.run.messages_sent;
  r.max_bits = out.run.max_message_bits;
  r.add_check("monochromatic_edges==0",
              static_cast<double>(check_legal(g, out.coloring).size()), 0.0);
  BoundParams bp;
  bp.n = g.n();
  bp.max_degree = maxdeg;
  bp.depth = depth;
  for (const auto& b : bound_formulas("delta", bp)) {
    const double measured = b.tag == "palette<=maxdeg+1"
                                ? static_cast<double>(r.palette)
                                : static_cast<double>(r.rounds);
    r.add_check(b.tag, measured, b.value);
  }
  return out;
}

} // namespace dcolor
