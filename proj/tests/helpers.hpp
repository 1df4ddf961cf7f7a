#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hilbert/random.hpp"
#include "hilbert/sequence_space.hpp"

namespace testing {

inline double rel_diff(double a, double b) {
  const double s = std::max(std::fabs(a), std::fabs(b));
  return s == 0.0 ? 0.0 : std::fabs(a - b) / s;
}

// Nonnegative start-1 sequence with random length in [1, max_len] and a
// mix of zeros and heavy entries.
inline hilbert::Sequence random_sequence(hilbert::SplitMix64& rng, std::int64_t max_len, int start = 1) {
  const auto len = 1 + rng.below(std::uint64_t(max_len));
  std::vector<double> v(len);
  for (auto& x : v) x = rng.bernoulli(0.8) ? std::pow(rng.uniform_open_zero(), -0.3) : 0.0;
  v[rng.below(len)] = 1.0;
  return hilbert::Sequence(start, std::move(v));
}

// Plain double loop, no factorization: an independent reference.
template <class K>
double naive_form(K&& k, const hilbert::Sequence& a, const hilbert::Sequence& b) {
  long double s = 0.0L;
  for (std::int64_t m = 1; m <= a.last_index(); ++m) {
    for (std::int64_t n = 1; n <= b.last_index(); ++n) s += (long double)(a[m] * b[n]) * k(m, n);
  }
  return double(s);
}

}  // namespace testing
