#include "hilbert/norm_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hilbert/errors.hpp"
#include "hilbert/random.hpp"
#include "hilbert/summation.hpp"

namespace hilbert {

namespace {

void check_p(double p) {
  if (!std::isfinite(p) || p <= 1.0) {
    throw Error(ErrorKind::Domain, "p must lie in (1, inf), got " + std::to_string(p));
  }
}

void check_family(double eps, double p, std::int64_t M) {
  check_p(p);
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::Domain, "the certified eps-family bound needs 0 < eps < 1");
  }
  if (M < 1) throw Error(ErrorKind::Parameter, "truncation M must be >= 1");
  if (M > kMaxFamilyTruncation) {
    throw Error(ErrorKind::InsufficientTruncation,
                "block truncation M = " + std::to_string(M) + " exceeds the cap " +
                    std::to_string(kMaxFamilyTruncation));
  }
}

// G(s) = int_s^inf u^-c / (1+u) du for 0 < c < 1.
class UpperBetaTail {
 public:
  UpperBetaTail(double c, double tol) : c_(c), tol_(tol) {
    const auto head = integrate_algebraic(reciprocal_, 0.0, 1.0, {c_, 0.0}, tol_);
    const auto far = integrate_algebraic(reciprocal_, 0.0, 1.0, {1.0 - c_, 0.0}, tol_);
    head_ = head.value;
    far_ = far.value;
    max_error_ = head.error_estimate + far.error_estimate;
  }

  double operator()(double s) {
    QuadratureResult part;
    double value = 0.0;
    if (s <= 1.0) {
      part = integrate_algebraic(reciprocal_, 0.0, s, {c_, 0.0}, tol_);
      value = head_ - part.value + far_;
      max_error_ = std::max(max_error_, part.error_estimate + base_error());
    } else {
      part = integrate_algebraic(reciprocal_, 0.0, 1.0 / s, {1.0 - c_, 0.0}, tol_);
      value = part.value;
      max_error_ = std::max(max_error_, part.error_estimate);
    }
    return value;
  }

  /// Largest error estimate of any G value handed out so far.
  double max_error() const noexcept { return max_error_; }

 private:
  double base_error() const noexcept { return 2.0 * tol_; }

  double c_;
  double tol_;
  double head_ = 0.0;
  double far_ = 0.0;
  double max_error_ = 0.0;
  Integrand reciprocal_ = [](double u) { return 1.0 / (1.0 + u); };
};

// Upper bound of zeta(1+eps) = sum m^(-1-eps): partial sum to M plus the
// integral-test tail, padded for summation roundoff.
double zeta_upper(double eps, std::int64_t M, double* tail) {
  CompensatedSum s;
  for (std::int64_t m = 1; m <= M; ++m) s.add(std::exp(-(1.0 + eps) * std::log(double(m))));
  *tail = power_tail_bound(M, 1.0 + eps);
  const double total = s.value() + *tail;
  return total * (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
}

SharpnessPoint finish_point(double eps, double p, std::int64_t M, double block) {
  const double tol = 1e-9;
  const auto tail = weighted_tail_integral(eps, p, M, tol);
  double norm_tail = 0.0;
  const double zeta = zeta_upper(eps, M, &norm_tail);
  SharpnessPoint pt;
  pt.eps = eps;
  pt.truncation = M;
  pt.block = block;
  pt.numerator_tail = std::max(0.0, tail.value - tail.error_estimate);
  pt.tail_budget = tail.error_estimate;
  // a_m^p and b_n^q are both m^(-1-eps), so |a|_p |b|_q <= zeta^(1/p) zeta^(1/q).
  pt.ratio = (block + pt.numerator_tail) / zeta;
  pt.phi_bound = std::clamp(zeta - 1.0 / eps, 0.0, 1.0);
  pt.psi_bound = pt.phi_bound;
  return pt;
}

}  // namespace

double theoretical_norm(double p) {
  check_p(p);
  // Evaluate at the larger exponent of the pair so p and q give one value.
  const auto e = conjugate(p);
  return std::numbers::pi / std::sin(std::numbers::pi / std::max(e.p, e.q));
}

SequencePair epsilon_family(double eps, double p, std::int64_t M) {
  check_p(p);
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorKind::Domain, "eps must be positive");
  if (M < 1) throw Error(ErrorKind::Parameter, "truncation M must be >= 1");
  const double q = p / (p - 1.0);
  std::vector<double> a(static_cast<std::size_t>(M)), b(static_cast<std::size_t>(M));
  for (std::int64_t m = 1; m <= M; ++m) {
    const double lm = std::log(double(m));
    a[m - 1] = std::exp(-(1.0 + eps) / p * lm);
    b[m - 1] = std::exp(-(1.0 + eps) / q * lm);
  }
  return {Sequence(1, std::move(a)), Sequence(1, std::move(b))};
}

QuadratureResult weighted_tail_integral(double eps, double p, std::int64_t M, double tol) {
  check_family(eps, p, M);
  if (!(tol > 0.0)) throw Error(ErrorKind::Parameter, "tolerance must be positive");
  const double q = p / (p - 1.0);
  const double c = 1.0 / p + eps / q;
  const double X = double(M) + 1.0;
  UpperBetaTail G(c, 0.25 * tol * eps);

  // x >= X, y >= 1: int_X^inf x^(-1-eps) G(1/x) dx, with x = X/w.
  const double far_scale = std::exp(-eps * std::log(X));
  const Integrand far_r = [&](double w) { return far_scale * G(w / X); };
  const auto far = integrate_algebraic(far_r, 0.0, 1.0, {1.0 - eps, 0.0}, 0.25 * tol);

  // 1 <= x < X, y >= X: int_1^X x^(-1-eps) G(X/x) dx.
  const Integrand strip = [&](double x) { return std::exp(-(1.0 + eps) * std::log(x)) * G(X / x); };
  const auto near = adaptive_integrate(strip, 1.0, X, 0.25 * tol);

  // Each G error enters through a weight of total mass at most 1/eps.
  const double g_error = G.max_error() / eps;
  return QuadratureResult{far.value + near.value, far.error_estimate + near.error_estimate + g_error,
                          far.subdivisions + near.subdivisions};
}

SharpnessPoint epsilon_family_ratio(double eps, double p, std::int64_t M) {
  check_family(eps, p, M);
  const auto [a, b] = epsilon_family(eps, p, M);
  const double block = bilinear_form(KernelSpec::weighted_main(p), a, b);
  return finish_point(eps, p, M, block);
}

SharpnessPoint kp_epsilon_family_ratio(double eps, double p, std::int64_t M) {
  check_family(eps, p, M);
  const auto [A, b] = epsilon_family(eps, p, M);
  const TaylorFunction f(lp_to_kp_isometry(A, p));
  const auto image = hilbert_apply(f, M - 1);
  // Pair (n+1)^((p-2)/p) c_n against the dual family; the K^p norm of the
  // image dominates this pairing divided by |b|_q.
  const double e = snap_exponent((p - 2.0) / p);
  const auto c = image.coeffs().values();
  CompensatedSum pairing;
  for (std::size_t n = 0; n < c.size(); ++n) {
    pairing.add(power_weight(double(n + 1), e) * c[n] * b.values()[n]);
  }
  return finish_point(eps, p, M, pairing.value());
}

NormEstimate ascent_lower_bound(const KernelSpec& spec, double p, std::int64_t N,
                                const AscentOptions& options) {
  spec.validate();
  check_p(p);
  if (N < 1) throw Error(ErrorKind::Parameter, "ascent needs N >= 1");
  if (options.max_iterations < 1) throw Error(ErrorKind::Parameter, "ascent needs iters >= 1");
  const double q = p / (p - 1.0);

  std::vector<double> start(static_cast<std::size_t>(N), 1.0);
  if (options.seed) {
    SplitMix64 rng(*options.seed);
    for (double& v : start) v = rng.uniform_open_zero();
  }
  Sequence a(1, std::move(start));
  {
    const double norm = lp_norm(a, p);
    for (double& v : a.mutable_values()) v /= norm;
  }

  NormEstimate est;
  est.p = p;
  est.method = EstimateMethod::Ascent;
  est.kernel = spec;
  est.size = N;

  // Returns false when the new objective no longer improves.
  auto record = [&](double value) {
    if (!est.trace.empty()) {
      const double last = est.trace.back();
      if (value < last) return false;
      est.trace.push_back(value);
      return (value - last) > options.relative_tolerance * value;
    }
    est.trace.push_back(value);
    return true;
  };

  for (int it = 0; it < options.max_iterations; ++it) {
    est.iterations = it + 1;
    const Sequence c = apply_operator(spec, a, N);
    if (!record(lp_norm(c, p))) break;
    const Sequence b = dual_align(c, p);
    const Sequence d = apply_transpose(spec, b, N);
    if (!record(lp_norm(d, q))) break;
    a = dual_align(d, q);
  }
  est.lower_bound = est.trace.back();
  return est;
}

double kp_ratio(const TaylorFunction& f, double p, std::int64_t n_max) {
  check_p(p);
  const double denom = kp_norm(f, p);
  if (denom == 0.0) throw Error(ErrorKind::Degenerate, "kp_ratio of the zero function is undefined");
  return kp_norm(hilbert_apply(f, n_max), p) / denom;
}

}  // namespace hilbert
