#include "dcolor/engine.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

namespace dcolor {

int message_bits(const Message& m) {
  int bits = kTagBits;
  for (int i = 0; i < m.nvals; ++i) {
    // ceil(log2(v+2)) == bit_width(v+1) for v >= 0
    bits += std::bit_width(static_cast<std::uint64_t>(m.vals[i]) + 1);
  }
  return bits;
}

Message StepContext::build(int tag, std::initializer_list<std::int64_t> vals) const {
  if (tag < 0 || tag > kMaxTag) fail("message tag " + std::to_string(tag) + " out of range");
  if (vals.size() > 4) fail("message payload too long");
  Message m;
  m.source = info_->id;
  m.tag = static_cast<std::int16_t>(tag);
  m.nvals = static_cast<std::int16_t>(vals.size());
  int i = 0;
  for (std::int64_t v : vals) {
    if (v < 0) fail("negative message value " + std::to_string(v));
    m.vals[i++] = v;
  }
  return m;
}

void StepContext::send(VertexId to, int tag, std::initializer_list<std::int64_t> vals) {
  if (out_ == nullptr) fail("send during init");
  const auto nbs = info_->neighbors;
  if (!std::binary_search(nbs.begin(), nbs.end(), to))
    fail("message to non-neighbor " + std::to_string(to));
  out_->push_back({false, to, build(tag, vals)});
}

void StepContext::broadcast(int tag, std::initializer_list<std::int64_t> vals) {
  if (out_ == nullptr) fail("send during init");
  out_->push_back({true, 0, build(tag, vals)});
}

void StepContext::fail(const std::string& what) const {
  throw ProtocolError("vertex " + std::to_string(info_->id) + " round " +
                      std::to_string(round_) + ": " + what);
}

RunConfig& engine_defaults() {
  static RunConfig defaults;
  return defaults;
}

RunResult run(const Graph& g, const ProgramFactory& factory, const RunConfig& cfg) {
  const VertexId n = g.n();
  const std::size_t sz = static_cast<std::size_t>(n) + 1;

  std::vector<std::unique_ptr<VertexProgram>> prog(sz);
  std::vector<VertexInfo> info(sz);
  for (VertexId v = 1; v <= n; ++v) {
    prog[v] = factory(v);
    info[v] = {v, n, g.degree(v), g.max_degree(), g.neighbors(v)};
  }
  for (VertexId v = 1; v <= n; ++v) {
    StepContext ctx(info[v], 0, {}, nullptr);
    prog[v]->init(ctx);
  }

  std::vector<std::vector<Message>> inbox_cur(sz), inbox_next(sz);
  std::vector<std::vector<Outgoing>> outbox(sz);
  std::vector<char> stepped(sz, 0);
  std::vector<int> sent_count(sz, 0), sent_bits(sz, 0);

  if (cfg.trace) *cfg.trace << "round,vertex,tag,sent,bits\n";

  RunResult res;
  auto all_finished = [&] {
    for (VertexId v = 1; v <= n; ++v)
      if (!prog[v]->finished()) return false;
    return true;
  };

  int round = 0;
  while (!all_finished()) {
    if (round >= cfg.max_rounds)
      throw NonTerminationError("max rounds (" + std::to_string(cfg.max_rounds) +
                                ") reached with unfinished vertices");
    ++round;
    std::swap(inbox_cur, inbox_next);
    for (VertexId v = 1; v <= n; ++v) inbox_next[v].clear();
    std::fill(stepped.begin(), stepped.end(), 0);

    auto step_one = [&](VertexId v) {
      if (prog[v]->finished()) return;
      StepContext ctx(info[v], round, inbox_cur[v], &outbox[v]);
      prog[v]->step(ctx);
      stepped[v] = 1;
    };
    if (cfg.order == StepOrder::Forward) {
      for (VertexId v = 1; v <= n; ++v) step_one(v);
    } else {
      for (VertexId v = n; v >= 1; --v) step_one(v);
    }

    // Delivery scans senders ascending, so inbox order next round does not
    // depend on the step order above.
    for (VertexId v = 1; v <= n; ++v) {
      sent_count[v] = 0;
      sent_bits[v] = 0;
      for (const Outgoing& o : outbox[v]) {
        Message m = o.msg;
        const int bits = message_bits(m);
        res.max_message_bits = std::max(res.max_message_bits, bits);
        sent_bits[v] = std::max(sent_bits[v], bits);
        if (o.broadcast) {
          for (VertexId nb : info[v].neighbors) {
            inbox_next[nb].push_back(m);
            ++res.messages_sent;
            ++sent_count[v];
          }
        } else {
          inbox_next[o.to].push_back(m);
          ++res.messages_sent;
          ++sent_count[v];
        }
      }
      outbox[v].clear();
    }

    if (cfg.trace) {
      for (VertexId v = 1; v <= n; ++v)
        if (stepped[v])
          *cfg.trace << round << ',' << v << ',' << prog[v]->state_tag() << ','
                     << sent_count[v] << ',' << sent_bits[v] << '\n';
    }
  }

  res.rounds_used = round;
  res.halted = true;
  res.outputs.assign(sz, 0);
  for (VertexId v = 1; v <= n; ++v) res.outputs[v] = prog[v]->output();
  return res;
}

} // namespace dcolor
