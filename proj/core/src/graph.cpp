#include "dcolor/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace dcolor {

namespace {

std::uint64_t pair_key(VertexId u, VertexId v, VertexId n) {
  return static_cast<std::uint64_t>(u) * (static_cast<std::uint64_t>(n) + 1) + v;
}

// Uniform double in [0,1) from the top 53 bits of a 64-bit draw.
double rand01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Index in [0, k).  Modulo reduction; the bias is irrelevant for graph
// generation and keeps the draw sequence trivial to reproduce elsewhere.
std::size_t rand_index(std::mt19937_64& rng, std::size_t k) {
  return static_cast<std::size_t>(rng() % k);
}

} // namespace

Graph Graph::from_edges(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges) {
  if (n < 1) throw GraphError("graph: need n >= 1");
  Graph g;
  g.n_ = n;
  g.adj_.assign(static_cast<std::size_t>(n) + 1, {});
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u == v) throw GraphError("graph: self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (u < 1 || v > n)
      throw GraphError("graph: edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") out of range 1.." + std::to_string(n));
    if (!seen.insert(pair_key(u, v, n)).second)
      throw GraphError("graph: duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  g.m_ = static_cast<std::int64_t>(seen.size());
  for (VertexId v = 1; v <= n; ++v) {
    auto& a = g.adj_[v];
    std::sort(a.begin(), a.end());
    g.max_degree_ = std::max(g.max_degree_, static_cast<int>(a.size()));
  }
  return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u < 1 || u > n_ || v < 1 || v > n_) return false;
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (VertexId u = 1; u <= n_; ++u)
    for (VertexId v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

namespace {

Graph gen_cycle(VertexId n) {
  if (n < 3) throw GraphError("cycle: need n >= 3");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 1; v < n; ++v) e.emplace_back(v, v + 1);
  e.emplace_back(1, n);
  return Graph::from_edges(n, std::move(e));
}

Graph gen_path(VertexId n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 1; v < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, std::move(e));
}

Graph gen_complete(VertexId n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId u = 1; u <= n; ++u)
    for (VertexId v = u + 1; v <= n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, std::move(e));
}

Graph gen_star(VertexId n) {
  if (n < 2) throw GraphError("star: need n >= 2");
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 2; v <= n; ++v) e.emplace_back(1, v);
  return Graph::from_edges(n, std::move(e));
}

// Row-major grid with floor(sqrt(n)) rows, truncated to exactly n vertices.
Graph gen_grid(VertexId n) {
  VertexId rows = static_cast<VertexId>(std::floor(std::sqrt(static_cast<double>(n))));
  if (rows < 1) rows = 1;
  VertexId cols = (n + rows - 1) / rows;
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 1; v <= n; ++v) {
    VertexId c = (v - 1) % cols;
    if (c + 1 < cols && v + 1 <= n) e.emplace_back(v, v + 1);
    if (v + cols <= n) e.emplace_back(v, v + cols);
  }
  return Graph::from_edges(n, std::move(e));
}

Graph gen_gnp(VertexId n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw GraphError("gnp: need 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId u = 1; u <= n; ++u)
    for (VertexId v = u + 1; v <= n; ++v)
      if (rand01(rng) < p) e.emplace_back(u, v);
  return Graph::from_edges(n, std::move(e));
}

// Random d-regular simple graph by stub pairing.  Stubs are matched one
// random suitable pair at a time; when random picks stall, the first
// suitable pair in scan order is taken, and if none exists the attempt
// restarts.  Fully determined by the seed.
Graph gen_regular(VertexId n, int d, std::uint64_t seed) {
  if (d < 0 || d >= n) throw GraphError("regular: need 0 <= d < n");
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0)
    throw GraphError("regular: n*d must be even");
  if (d == 0) return Graph::from_edges(n, {});

  std::mt19937_64 rng(seed);
  const int max_attempts = 2000;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<VertexId> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (VertexId v = 1; v <= n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);

    std::unordered_set<std::uint64_t> present;
    std::vector<std::pair<VertexId, VertexId>> e;
    e.reserve(stubs.size() / 2);
    bool stuck = false;

    while (!stubs.empty()) {
      bool matched = false;
      for (int tries = 0; tries < 64 && !matched; ++tries) {
        std::size_t i = rand_index(rng, stubs.size());
        std::size_t j = rand_index(rng, stubs.size());
        if (i == j) continue;
        VertexId u = stubs[i], v = stubs[j];
        if (u == v) continue;
        VertexId a = std::min(u, v), b = std::max(u, v);
        if (present.contains(pair_key(a, b, n))) continue;
        present.insert(pair_key(a, b, n));
        e.emplace_back(a, b);
        if (i < j) std::swap(i, j); // erase the larger index first
        stubs[i] = stubs.back(); stubs.pop_back();
        stubs[j] = stubs.back(); stubs.pop_back();
        matched = true;
      }
      if (matched) continue;
      // Random picks stalled: fall back to the first suitable pair in scan
      // order, or restart if the remaining stubs admit none.
      std::size_t bi = stubs.size(), bj = stubs.size();
      for (std::size_t i = 0; i < stubs.size() && bi == stubs.size(); ++i) {
        for (std::size_t j = i + 1; j < stubs.size(); ++j) {
          VertexId u = stubs[i], v = stubs[j];
          if (u == v) continue;
          VertexId a = std::min(u, v), b = std::max(u, v);
          if (present.contains(pair_key(a, b, n))) continue;
          bi = i; bj = j;
          break;
        }
      }
      if (bi == stubs.size()) { stuck = true; break; }
      VertexId u = stubs[bi], v = stubs[bj];
      VertexId a = std::min(u, v), b = std::max(u, v);
      present.insert(pair_key(a, b, n));
      e.emplace_back(a, b);
      stubs[bj] = stubs.back(); stubs.pop_back();
      stubs[bi] = stubs.back(); stubs.pop_back();
    }
    if (!stuck) return Graph::from_edges(n, std::move(e));
  }
  throw GraphError("regular: generation did not converge; try another seed");
}

} // namespace

Graph generate(const GraphSpec& spec) {
  if (spec.n < 1) throw GraphError("generate: need n >= 1");
  switch (spec.kind) {
    case GraphKind::Cycle: return gen_cycle(spec.n);
    case GraphKind::Complete: return gen_complete(spec.n);
    case GraphKind::Path: return gen_path(spec.n);
    case GraphKind::Star: return gen_star(spec.n);
    case GraphKind::Grid: return gen_grid(spec.n);
    case GraphKind::Gnp: return gen_gnp(spec.n, spec.edge_prob, spec.seed);
    case GraphKind::Regular: return gen_regular(spec.n, spec.degree, spec.seed);
  }
  throw GraphError("generate: unknown graph kind");
}

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "cycle") return GraphKind::Cycle;
  if (name == "complete") return GraphKind::Complete;
  if (name == "path") return GraphKind::Path;
  if (name == "star") return GraphKind::Star;
  if (name == "grid") return GraphKind::Grid;
  if (name == "gnp") return GraphKind::Gnp;
  if (name == "regular") return GraphKind::Regular;
  throw GraphError("unknown graph kind: " + name);
}

std::string graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::Cycle: return "cycle";
    case GraphKind::Complete: return "complete";
    case GraphKind::Path: return "path";
    case GraphKind::Star: return "star";
    case GraphKind::Grid: return "grid";
    case GraphKind::Gnp: return "gnp";
    case GraphKind::Regular: return "regular";
  }
  return "?";
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw GraphError("edge list line " + std::to_string(line) + ": " + what);
}

} // namespace

Graph load_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw GraphError("edge list: empty input");
  ++lineno;
  VertexId n;
  std::int64_t m;
  {
    std::istringstream hdr(line);
    std::string extra;
    if (!(hdr >> n >> m) || (hdr >> extra)) parse_fail(lineno, "expected header \"n m\"");
    if (n < 1) parse_fail(lineno, "need n >= 1");
    if (m < 0) parse_fail(lineno, "need m >= 0");
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) {
    if (!std::getline(in, line)) throw GraphError("edge list: expected " + std::to_string(m) +
                                                  " edges, got " + std::to_string(k));
    ++lineno;
    std::istringstream row(line);
    VertexId u, v;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) parse_fail(lineno, "expected \"u v\"");
    if (u == v) parse_fail(lineno, "self-loop at vertex " + std::to_string(u));
    if (u > v) parse_fail(lineno, "endpoints out of order, need u < v");
    if (u < 1 || v > n) parse_fail(lineno, "endpoint out of range 1.." + std::to_string(n));
    edges.emplace_back(u, v);
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty()) parse_fail(lineno, "trailing content after edge list");
  }
  try {
    return Graph::from_edges(n, std::move(edges));
  } catch (const GraphError& e) {
    throw GraphError(std::string("edge list: ") + e.what());
  }
}

Graph load_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GraphError("cannot open graph file: " + path);
  return load_graph(f);
}

void save_graph(const Graph& g, std::ostream& out) {
  out << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void save_graph_file(const Graph& g, const std::string& path) {
  std::ofstream f(path, std::ios::binary); // binary: keep LF endings everywhere
  if (!f) throw GraphError("cannot open graph file for writing: " + path);
  save_graph(g, f);
}

} // namespace dcolor
