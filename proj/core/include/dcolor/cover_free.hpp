#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dcolor/graph.hpp"

namespace dcolor {

// Polynomial-evaluation set family over GF(q).  Set index i (1-based) maps
// to a polynomial p of degree <= d via the base-q digits of i-1; the set is
// { a*q + p(a) + 1 : a in 0..q-1 }, a subset of 1..q^2 of size exactly q.
// Distinct sets intersect in at most d elements, so no set is covered by
// the union of A others as long as q > A*d.
struct CoverFreeFamily {
  int A = 0;
  int d = 0;
  std::int64_t q = 0;
  std::int64_t ground_size = 0; // q^2
  std::int64_t set_count = 0;   // q^(d+1)

  std::vector<std::int64_t> set(std::int64_t index) const; // sorted ascending
};

// Smallest d = 1,2,... with q^(d+1) >= k for q = next_prime(A*d).
CoverFreeFamily build_family(int A, std::int64_t k);

// Shared immutable cache keyed by (A, k).  Construction is deterministic,
// so vertices may consult the cache without breaking the locality model.
const CoverFreeFamily& cached_family(int A, std::int64_t k);

// Smallest element of set(own) not present in any of the excluded sets;
// 0 if the difference is empty (precondition violation upstream).
std::int64_t pick_from_family(const CoverFreeFamily& f, std::int64_t own,
                              std::span<const std::int64_t> excluded_indices);

// Debug text: one set per line, elements space-separated.
void dump_family(const CoverFreeFamily& f, std::ostream& out);

} // namespace dcolor
