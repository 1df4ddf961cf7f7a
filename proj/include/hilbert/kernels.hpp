#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "hilbert/sequence_space.hpp"

namespace hilbert {

enum class KernelVariant {
  Classical,      // 1/(m+n-1)
  WeightedMain,   // (n/m)^(1/q-1/p) / (m+n-1)
  YangShift,      // (n/m)^(1/q-1/p) / (m+n)
  YangHalfShift,  // ((n-1/2)/(m-1/2))^(1/q-1/p) / (m+n-1)
  AlphaRow,       // (m/n)^(1/p) / ((m+n)^(1-alpha) (m+n-1)^alpha)
};

std::string_view variant_name(KernelVariant v) noexcept;
KernelVariant parse_variant(std::string_view name);

struct KernelSpec {
  KernelVariant variant = KernelVariant::Classical;
  double p = 2.0;      // ignored by Classical
  double alpha = 0.0;  // AlphaRow only

  static KernelSpec classical() { return {KernelVariant::Classical, 2.0, 0.0}; }
  static KernelSpec weighted_main(double p) { return {KernelVariant::WeightedMain, p, 0.0}; }
  static KernelSpec yang_shift(double p) { return {KernelVariant::YangShift, p, 0.0}; }
  static KernelSpec yang_half_shift(double p) { return {KernelVariant::YangHalfShift, p, 0.0}; }
  static KernelSpec alpha_row(double p, double alpha) { return {KernelVariant::AlphaRow, p, alpha}; }

  /// Throws Domain when p or alpha is out of range for the variant.
  void validate() const;
};

/// `variant,p,alpha` text triple used in reports.
std::string to_string(const KernelSpec& spec);
KernelSpec parse_kernel_spec(std::string_view text);

double kernel_value(const KernelSpec& spec, std::int64_t m, std::int64_t n);

/// sum_{m,n} k(m,n) a_m b_n over the (finite) supports of a and b, both
/// start-1 and nonnegative.
double bilinear_form(const KernelSpec& spec, const Sequence& a, const Sequence& b);

/// c_n = sum_m k(m,n) a_m for 1 <= n <= n_max.
Sequence apply_operator(const KernelSpec& spec, const Sequence& a, std::int64_t n_max);
/// d_m = sum_n k(m,n) b_n for 1 <= m <= m_max (the transpose action).
Sequence apply_transpose(const KernelSpec& spec, const Sequence& b, std::int64_t m_max);

struct BoundedValue {
  double value = 0.0;
  double error_bound = 0.0;
  std::int64_t terms = 0;  // number of summands added explicitly
};

/// sum_{n>=1} (m/n)^(1/p) / ((m+n)^(1-alpha) (m+n-1)^alpha) with a certified
/// remainder: the summand is log-convex and decreasing in n, so the tail past
/// N lies between int_N^inf f - f(N)/2 and int_{N+1/2}^inf f.
BoundedValue row_sum_alpha(std::int64_t m, double p, double alpha, double tol);

}  // namespace hilbert
