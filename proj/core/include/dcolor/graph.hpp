#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcolor {

using VertexId = std::int32_t;

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Undirected simple graph on vertices 1..n.  Adjacency lists are sorted and
// symmetric; both are invariants of every constructed instance.
class Graph {
public:
  // Takes edges as (u, v) pairs with 1 <= u < v <= n.  Rejects self-loops,
  // duplicates and out-of-range endpoints.
  static Graph from_edges(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges);

  VertexId n() const { return n_; }
  std::int64_t m() const { return m_; }
  int max_degree() const { return max_degree_; }
  int degree(VertexId v) const { return static_cast<int>(adj_[v].size()); }
  std::span<const VertexId> neighbors(VertexId v) const { return adj_[v]; }
  bool has_edge(VertexId u, VertexId v) const;

  // Sorted (u, v) pairs with u < v; the canonical edge order.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

private:
  Graph() = default;
  VertexId n_ = 0;
  std::int64_t m_ = 0;
  int max_degree_ = 0;
  std::vector<std::vector<VertexId>> adj_; // index 0 unused
};

enum class GraphKind { Cycle, Complete, Path, Star, Grid, Gnp, Regular };

struct GraphSpec {
  GraphKind kind = GraphKind::Cycle;
  VertexId n = 0;
  double edge_prob = 0.0; // gnp only
  int degree = 0;         // regular only
  std::uint64_t seed = 0; // gnp and regular only
};

// Deterministic generation: equal specs produce identical graphs on every
// platform.  Randomized kinds draw from std::mt19937_64 seeded with
// spec.seed; see the README for the exact sampling rules.
Graph generate(const GraphSpec& spec);

GraphKind parse_graph_kind(const std::string& name);
std::string graph_kind_name(GraphKind kind);

// Edge-list text format: first line "n m", then one "u v" line per edge with
// 1 <= u < v <= n, sorted by (u, v), LF line endings.  save_graph always
// emits this canonical form; load_graph rejects anything that deviates from
// the format, reporting the offending line number.
Graph load_graph(std::istream& in);
Graph load_graph_file(const std::string& path);
void save_graph(const Graph& g, std::ostream& out);
void save_graph_file(const Graph& g, const std::string& path);

} // namespace dcolor
