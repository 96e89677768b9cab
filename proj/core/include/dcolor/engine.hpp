#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcolor/graph.hpp"

namespace dcolor {

// Lockstep synchronous message passing.  A message sent in round R is
// readable exactly in round R+1; steps within a round observe only the
// round snapshot, so any per-round execution order gives the same result.

struct Message {
  VertexId source = 0;
  std::int16_t tag = 0;
  std::int16_t nvals = 0;
  std::array<std::int64_t, 4> vals{};
};

// Tags fit in 3 bits; payload values are charged ceil(log2(value+2)) bits
// each, so a value of 0 still costs one bit.
inline constexpr int kTagBits = 3;
inline constexpr int kMaxTag = (1 << kTagBits) - 1;
int message_bits(const Message& m);

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A program addressed a non-neighbor, sent a malformed payload, or raised
// a local check failure.
class ProtocolError : public EngineError {
 public:
  using EngineError::EngineError;
};

// max_rounds exhausted with unfinished vertices.
class NonTerminationError : public EngineError {
 public:
  using EngineError::EngineError;
};

struct VertexInfo {
  VertexId id = 0;
  VertexId n = 0;
  int degree = 0;
  int max_degree = 0;               // graph-wide, known to every vertex
  std::span<const VertexId> neighbors; // ascending
};

struct Outgoing {
  bool broadcast = false;
  VertexId to = 0;
  Message msg;
};

// Handed to init (round 0, empty inbox, sending disallowed) and to each
// step.  All sends are validated here, at the sender.
class StepContext {
 public:
  StepContext(const VertexInfo& info, int round, std::span<const Message> inbox,
              std::vector<Outgoing>* out)
      : info_(&info), round_(round), inbox_(inbox), out_(out) {}

  const VertexInfo& self() const { return *info_; }
  int round() const { return round_; }
  std::span<const Message> inbox() const { return inbox_; }

  void send(VertexId to, int tag, std::initializer_list<std::int64_t> vals);
  void broadcast(int tag, std::initializer_list<std::int64_t> vals);

  [[noreturn]] void fail(const std::string& what) const;

 private:
  Message build(int tag, std::initializer_list<std::int64_t> vals) const;

  const VertexInfo* info_;
  int round_;
  std::span<const Message> inbox_;
  std::vector<Outgoing>* out_;
};

class VertexProgram {
 public:
  virtual ~VertexProgram() = default;
  virtual void init(StepContext& ctx) = 0;
  virtual void step(StepContext& ctx) = 0;
  virtual bool finished() const = 0;
  virtual std::int64_t output() const = 0;
  virtual int state_tag() const { return 0; }
};

using ProgramFactory = std::function<std::unique_ptr<VertexProgram>(VertexId)>;

enum class StepOrder { Forward, Reverse };

struct RunConfig {
  int max_rounds = 1 << 20;
  StepOrder order = StepOrder::Forward;
  std::ostream* trace = nullptr; // CSV rows: round,vertex,tag,sent,bits
};

struct RunResult {
  int rounds_used = 0;
  std::int64_t messages_sent = 0; // broadcast counts one per delivered copy
  int max_message_bits = 0;
  bool halted = false;
  std::vector<std::int64_t> outputs; // 1-indexed
};

// Baseline config used wherever a caller passes none; the CLI maps --order,
// --trace and --max-rounds here once at startup.  Mutate only between runs.
// Outputs never depend on the order (the round snapshot is fixed), so this
// knob cannot change results, only the iteration schedule and the trace.
RunConfig& engine_defaults();

// Runs until every program reports finished.  Finished vertices are not
// stepped; messages addressed to them are still delivered and counted.
RunResult run(const Graph& g, const ProgramFactory& factory,
              const RunConfig& cfg = engine_defaults());

} // namespace dcolor
