#include "dcolor/cover_free.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

#include "dcolor/numeric.hpp"

namespace dcolor {

namespace {

// q^e, saturating well below int64 overflow; callers only compare against k.
std::int64_t pow_sat(std::int64_t q, int e) {
  const std::int64_t cap = std::int64_t{1} << 62;
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / q) return cap;
    r *= q;
  }
  return r;
}

} // namespace

CoverFreeFamily build_family(int A, std::int64_t k) {
  if (A < 1 || k < 1) throw std::invalid_argument("build_family: need A >= 1, k >= 1");
  for (int d = 1;; ++d) {
    std::int64_t q = next_prime(static_cast<std::int64_t>(A) * d);
    if (pow_sat(q, d + 1) >= k) {
      CoverFreeFamily f;
      f.A = A;
      f.d = d;
      f.q = q;
      f.ground_size = q * q;
      f.set_count = pow_sat(q, d + 1);
      return f;
    }
  }
}

const CoverFreeFamily& cached_family(int A, std::int64_t k) {
  static std::map<std::pair<int, std::int64_t>, CoverFreeFamily> cache;
  auto key = std::make_pair(A, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_family(A, k)).first;
  return it->second;
}

std::vector<std::int64_t> CoverFreeFamily::set(std::int64_t index) const {
  if (index < 1 || index > set_count)
    throw std::out_of_range("family set index " + std::to_string(index) +
                            " not in 1.." + std::to_string(set_count));
  // base-q digits of index-1 are the coefficients, constant term first
  std::vector<std::int64_t> coeff(static_cast<std::size_t>(d) + 1, 0);
  std::int64_t rem = index - 1;
  for (int i = 0; i <= d; ++i) {
    coeff[i] = rem % q;
    rem /= q;
  }
  std::vector<std::int64_t> elems;
  elems.reserve(static_cast<std::size_t>(q));
  for (std::int64_t a = 0; a < q; ++a) {
    std::int64_t val = 0;
    for (int i = d; i >= 0; --i) val = (val * a + coeff[i]) % q;
    elems.push_back(a * q + val + 1); // increasing in a, already sorted
  }
  return elems;
}

std::int64_t pick_from_family(const CoverFreeFamily& f, std::int64_t own,
                              std::span<const std::int64_t> excluded_indices) {
  std::vector<std::int64_t> used;
  used.reserve(excluded_indices.size() * static_cast<std::size_t>(f.q));
  for (std::int64_t idx : excluded_indices) {
    auto s = f.set(idx);
    used.insert(used.end(), s.begin(), s.end());
  }
  std::sort(used.begin(), used.end());
  for (std::int64_t e : f.set(own))
    if (!std::binary_search(used.begin(), used.end(), e)) return e;
  return 0;
}

void dump_family(const CoverFreeFamily& f, std::ostream& out) {
  for (std::int64_t i = 1; i <= f.set_count; ++i) {
    bool first = true;
    for (std::int64_t e : f.set(i)) {
      if (!first) out << ' ';
      out << e;
      first = false;
    }
    out << '\n';
  }
}

} // namespace dcolor
