#include "dcolor/numeric.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace dcolor {

double iterated_log_real(int i, double n) {
  double v = n;
  for (int k = 0; k < i; ++k) {
    if (v <= 0.0) return -HUGE_VAL;
    v = std::log2(v);
  }
  return v;
}

std::int64_t iterated_log(int i, std::int64_t n) {
  if (i < 0 || n < 1) throw std::invalid_argument("iterated_log: need i >= 0 and n >= 1");
  double v = static_cast<double>(n);
  for (int k = 0; k < i; ++k) {
    if (v <= 0.0) return 0;
    v = std::log2(v);
  }
  if (v <= 0.0) return 0;
  return static_cast<std::int64_t>(std::floor(v));
}

int log_star(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("log_star: need n >= 1");
  double v = static_cast<double>(n);
  int i = 0;
  while (v > 2.0) {
    v = std::log2(v);
    ++i;
  }
  return i;
}

std::int64_t next_prime(std::int64_t x) {
  if (x < 2) return 2;
  std::int64_t c = x + 1;
  for (;; ++c) {
    bool prime = c >= 2;
    for (std::int64_t d = 2; d * d <= c; ++d) {
      if (c % d == 0) { prime = false; break; }
    }
    if (prime) return c;
  }
}

int ceil_log2_ratio(std::int64_t value, std::int64_t base) {
  if (value < 1 || base < 1) throw std::invalid_argument("ceil_log2_ratio: need positive arguments");
  int s = 0;
  std::int64_t cover = base;
  while (cover < value) {
    cover *= 2;
    ++s;
    assert(s < 64);
  }
  return s;
}

} // namespace dcolor
