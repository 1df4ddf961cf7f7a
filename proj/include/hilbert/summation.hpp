#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace hilbert {

/// Neumaier's variant of Kahan summation. Error is O(u) relative to the sum of
/// magnitudes, independent of the number of terms.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline constexpr std::size_t kSummationBlock = 64;

/// Dot product of equal-length spans. Blocks of kSummationBlock products are
/// summed directly (vectorizable); block partials go through CompensatedSum,
/// so the rounding error grows with the block length, not the vector length.
inline double blocked_dot(std::span<const double> x, std::span<const double> y) noexcept {
  CompensatedSum total;
  const std::size_t n = x.size() < y.size() ? x.size() : y.size();
  std::size_t i = 0;
  for (; i + kSummationBlock <= n; i += kSummationBlock) {
    double partial = 0.0;
#pragma omp simd reduction(+ : partial)
    for (std::size_t j = i; j < i + kSummationBlock; ++j) partial += x[j] * y[j];
    total.add(partial);
  }
  double rest = 0.0;
  for (; i < n; ++i) rest += x[i] * y[i];
  total.add(rest);
  return total.value();
}

inline double compensated_sum(std::span<const double> x) noexcept {
  CompensatedSum total;
  for (double v : x) total.add(v);
  return total.value();
}

}  // namespace hilbert
