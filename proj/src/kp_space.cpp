#include "hilbert/kp_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hilbert/errors.hpp"
#include "hilbert/summation.hpp"

namespace hilbert {

TaylorFunction::TaylorFunction(Sequence coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.start_index() != 0) {
    throw Error(ErrorKind::InvalidInput, "Taylor coefficients are indexed from 0");
  }
  validate(coeffs_, "TaylorFunction", false);
}

TaylorFunction TaylorFunction::monomial(std::int64_t degree) {
  return TaylorFunction(Sequence::spike(0, degree));
}

double kp_norm(const TaylorFunction& f, double p) {
  if (!std::isfinite(p) || p <= 0.0) {
    throw Error(ErrorKind::Domain, "kp_norm needs p > 0, got " + std::to_string(p));
  }
  const auto a = f.coeffs().values();
  // Scale by the largest weighted term so the p-th powers cannot overflow.
  const double e = snap_exponent((p - 2.0) / p);
  std::vector<double> w(a.size());
  double scale = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    w[m] = std::fabs(a[m]) * power_weight(double(m + 1), e);
    scale = std::max(scale, w[m]);
  }
  if (scale == 0.0) return 0.0;
  CompensatedSum acc;
  for (double t : w) {
    if (t != 0.0) acc.add(std::pow(t / scale, p));
  }
  return scale * std::pow(acc.value(), 1.0 / p);
}

TaylorFunction hilbert_apply(const TaylorFunction& f, std::int64_t n_max) {
  if (n_max < 0) throw Error(ErrorKind::Parameter, "hilbert_apply needs n_max >= 0");
  const auto a = f.coeffs().values();
  const auto len = static_cast<std::size_t>(n_max) + 1;
  // 1/(m+n+1) for m + n = 0 .. a.size()+n_max.
  std::vector<double> diag(a.size() + len);
  for (std::size_t k = 0; k < diag.size(); ++k) diag[k] = 1.0 / double(k + 1);
  std::vector<double> c(len, 0.0);
  const std::span<const double> dspan(diag);
  for (std::size_t n = 0; n < len; ++n) c[n] = blocked_dot(a, dspan.subspan(n));
  return TaylorFunction(Sequence(0, std::move(c)));
}

EmbeddingBound k1_embedding_bound(const TaylorFunction& f, double p) {
  if (!std::isfinite(p) || p <= 1.0) {
    throw Error(ErrorKind::Domain, "k1_embedding_bound needs 1 < p < inf");
  }
  const double q = p / (p - 1.0);
  CompensatedSum lhs;
  const auto a = f.coeffs().values();
  for (std::size_t m = 0; m < a.size(); ++m) lhs.add(std::fabs(a[m]) / double(m + 1));
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  return EmbeddingBound{lhs.value(), std::pow(zeta2, 1.0 / q) * kp_norm(f, p)};
}

}  // namespace hilbert
