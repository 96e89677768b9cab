#pragma once

#include <string>
#include <vector>

#include "dcolor/coloring.hpp"
#include "dcolor/cover_free.hpp"
#include "dcolor/graph.hpp"

namespace dcolor {

struct EdgeViolation {
  VertexId u = 0, v = 0;
};

// Empty iff no edge is monochromatic.
std::vector<EdgeViolation> check_legal(const Graph& g, const Coloring& c);

struct DefectInfo {
  int defect = 0;             // max same-colored neighbors over vertices
  std::int64_t palette_used = 0; // distinct colors actually present
};

DefectInfo check_defect(const Graph& g, const Coloring& c);

struct MisViolation {
  std::string what;
  VertexId u = 0, v = 0;
};

// member is 1-indexed, nonzero = in the set.  Empty result iff the set is
// independent and maximal.
std::vector<MisViolation> check_mis(const Graph& g, const std::vector<char>& member);

// Exhaustive: no set contained in the union of any A others.  Tuple count
// set_count * C(set_count-1, A) is capped at 1e6; beyond that throws.
bool check_cover_free(const std::vector<std::vector<std::int64_t>>& sets, int A);
bool check_cover_free(const CoverFreeFamily& f, int A);

// Sequential smallest-free-color oracle over vertices in id order.
Coloring greedy_reference_coloring(const Graph& g);

struct BoundCheck {
  std::string tag;   // e.g. "rounds<=chi+1"
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct BoundReport {
  std::string algorithm;
  std::string params; // "p=2;q=5" style, semicolon separated, may be empty
  std::int64_t n = 0;
  int max_degree = 0;
  std::int64_t rounds = 0;
  std::int64_t palette = 0;
  int defect = 0;
  std::int64_t messages = 0;
  int max_bits = 0;
  std::vector<BoundCheck> checks;

  void add_check(const std::string& tag, double measured, double bound);
  bool all_pass() const;
  std::string to_json() const; // stable field order, machine-readable
};

struct BoundParams {
  std::int64_t n = 0;
  int max_degree = 0;
  std::int64_t chi = 0; // input palette (refine, defective, kw, mis)
  std::int64_t p = 0, q = 0, t = 0;
  int depth = 0;        // recursion depth i
  int defect_in = 0;    // defect bound of the seed coloring
  double c1 = 2.0;      // measured initial-palette constant
  double c2 = 2.0;      // measured per-level runtime constant
};

struct NamedBound {
  std::string tag;
  double value = 0.0;
};

// Theoretical bound values for the given algorithm id (linial, refine,
// defective, kw, delta, tradeoff, mis).  Throws on an unknown id.
std::vector<NamedBound> bound_formulas(const std::string& algorithm, const BoundParams& bp);

} // namespace dcolor
