#pragma once

#include <cstdint>

#include "hilbert/sequence_space.hpp"

namespace hilbert {

/// f(z) = sum_m a_m z^m, represented by its Taylor coefficients (start 0).
/// Only coefficient magnitudes matter for every K^p quantity below.
class TaylorFunction {
 public:
  TaylorFunction() : coeffs_(0, {}) {}
  explicit TaylorFunction(Sequence coeffs);
  explicit TaylorFunction(std::vector<double> coeffs) : TaylorFunction(Sequence(0, std::move(coeffs))) {}

  static TaylorFunction monomial(std::int64_t degree);

  const Sequence& coeffs() const noexcept { return coeffs_; }

 private:
  Sequence coeffs_;
};

/// (sum_m (m+1)^(p-2) |a_m|^p)^(1/p), p > 0.
double kp_norm(const TaylorFunction& f, double p);

/// Taylor coefficients c_n = sum_m a_m/(m+n+1) of H(f) for 0 <= n <= n_max.
/// The image has infinite support; anything computed from this truncation is
/// a lower bound for the corresponding quantity of H(f).
TaylorFunction hilbert_apply(const TaylorFunction& f, std::int64_t n_max);

struct EmbeddingBound {
  double lhs;  // sum |a_m|/(m+1)
  double rhs;  // zeta(2)^(1/q) ||f||_{K^p}
};

/// Hölder bound behind K^p ⊆ K^1.
EmbeddingBound k1_embedding_bound(const TaylorFunction& f, double p);

}  // namespace hilbert
