#pragma once

#include <cstdint>

namespace dcolor {

// Iterated binary logarithm, computed over reals: ilog(0, n) = n,
// ilog(i+1, n) = log2(ilog(i, n)).  The integer version floors the final
// value and saturates at 0 once the chain leaves the domain of log2.
double iterated_log_real(int i, double n);
std::int64_t iterated_log(int i, std::int64_t n);

// Smallest i such that iterated_log(i, n) <= 2.
int log_star(std::int64_t n);

// Smallest prime strictly greater than x.
std::int64_t next_prime(std::int64_t x);

// Smallest s >= 0 with base * 2^s >= value.  Used for stage counts of the
// halving color reduction; equals ceil(log2(value / base)) for value > base.
int ceil_log2_ratio(std::int64_t value, std::int64_t base);

} // namespace dcolor
