#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "dcolor/cover_free.hpp"
#include "dcolor/verify.hpp"

using namespace dcolor;

namespace {

// |a intersect b| for sorted vectors.
int intersection_size(const std::vector<std::int64_t>& a,
                      const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return static_cast<int>(out.size());
}

} // namespace

TEST_CASE("degree-1 family over GF(2): the four sets") {
  CoverFreeFamily f = build_family(1, 4);
  CHECK(f.A == 1);
  CHECK(f.d == 1);
  CHECK(f.q == 2);
  CHECK(f.ground_size == 4);
  CHECK(f.set_count == 4);
  CHECK(f.set(1) == std::vector<std::int64_t>{1, 3});
  CHECK(f.set(2) == std::vector<std::int64_t>{2, 4});
  CHECK(f.set(3) == std::vector<std::int64_t>{1, 4});
  CHECK(f.set(4) == std::vector<std::int64_t>{2, 3});
  CHECK(check_cover_free(f, 1));
}

TEST_CASE("family shape follows the smallest-degree rule") {
  // d minimal with next_prime(A*d)^(d+1) >= k.
  CoverFreeFamily f2 = build_family(2, 100);
  CHECK(f2.d == 2);
  CHECK(f2.q == 5);
  CHECK(f2.ground_size == 25);
  CHECK(f2.set_count == 125);

  CoverFreeFamily f3 = build_family(3, 30);
  CHECK(f3.d == 2);
  CHECK(f3.q == 7);
  CHECK(f3.ground_size == 49);

  CoverFreeFamily f10 = build_family(10, 65);
  CHECK(f10.d == 1);
  CHECK(f10.q == 11);
  CHECK(f10.ground_size == 121);

  CoverFreeFamily f1 = build_family(1, 200);
  CHECK(f1.d == 3);
  CHECK(f1.q == 5);
  CHECK(f1.set_count == 625);

  CoverFreeFamily f8 = build_family(8, 1024);
  CHECK(f8.d == 2);
  CHECK(f8.q == 17);
  CHECK(f8.ground_size == 289);
}

TEST_CASE("every set has q elements of the ground set, sorted") {
  CoverFreeFamily f = build_family(2, 100);
  for (std::int64_t i = 1; i <= f.set_count; ++i) {
    auto s = f.set(i);
    CHECK(static_cast<std::int64_t>(s.size()) == f.q);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(s.front() >= 1);
    CHECK(s.back() <= f.ground_size);
    // one element per evaluation point block [a*q+1, (a+1)*q]
    for (std::size_t a = 0; a < s.size(); ++a) {
      CHECK(s[a] > static_cast<std::int64_t>(a) * f.q);
      CHECK(s[a] <= static_cast<std::int64_t>(a + 1) * f.q);
    }
  }
}

TEST_CASE("distinct sets intersect in at most d points") {
  CoverFreeFamily f = build_family(2, 100);
  std::vector<std::vector<std::int64_t>> sets;
  for (std::int64_t i = 1; i <= f.set_count; ++i) sets.push_back(f.set(i));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      CHECK(intersection_size(sets[i], sets[j]) <= f.d);
}

TEST_CASE("distinct polynomials give distinct sets") {
  CoverFreeFamily f = build_family(3, 30);
  std::set<std::vector<std::int64_t>> seen;
  for (std::int64_t i = 1; i <= f.set_count; ++i) seen.insert(f.set(i));
  CHECK(static_cast<std::int64_t>(seen.size()) == f.set_count);
}

TEST_CASE("exhaustive cover-free verification on full families") {
  CHECK(check_cover_free(build_family(1, 4), 1));
  CHECK(check_cover_free(build_family(1, 40), 1));
  // 125 sets, 125 * C(124,2) tuples: just under the cap.
  CHECK(check_cover_free(build_family(2, 20), 2));
}

TEST_CASE("a duplicated set breaks cover-freeness") {
  CoverFreeFamily f = build_family(1, 4);
  std::vector<std::vector<std::int64_t>> sets = {f.set(1), f.set(2), f.set(3),
                                                 f.set(2)};
  CHECK_FALSE(check_cover_free(sets, 1));
}

TEST_CASE("the tuple cap is enforced") {
  // 343 sets at A=3 is far beyond 1e6 tuples.
  CHECK_THROWS_AS(check_cover_free(build_family(3, 30), 3), std::invalid_argument);
}

TEST_CASE("pick_from_family takes the smallest uncovered element") {
  CoverFreeFamily f = build_family(1, 4);
  // own = {1,3}; one excluded neighbor set covers 1 but not 3.
  std::vector<std::int64_t> one = {3}; // set(3) = {1,4}
  CHECK(pick_from_family(f, 1, one) == 3);
  std::vector<std::int64_t> none = {};
  CHECK(pick_from_family(f, 1, none) == 1);
  // A=1 allows one excluded set; two sets can cover everything: honest 0.
  std::vector<std::int64_t> two = {3, 4}; // {1,4} u {2,3} covers {1,3}
  CHECK(pick_from_family(f, 1, two) == 0);
}

TEST_CASE("cached_family returns one instance per key") {
  const CoverFreeFamily& a = cached_family(2, 100);
  const CoverFreeFamily& b = cached_family(2, 100);
  CHECK(&a == &b);
  CHECK(a.q == 5);
}
