#pragma once

#include <functional>

#include "hilbert/errors.hpp"

namespace hilbert {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr int kDefaultSubdivisionBudget = 4000;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;

  bool accepted(double tol) const noexcept { return error_estimate <= tol; }
};

/// Thrown when the subdivision budget runs out before the error estimate
/// drops below the tolerance. Carries the best estimate reached.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, QuadratureResult best)
      : Error(ErrorKind::AccuracyNotReached, what), best_(best) {}

  const QuadratureResult& best() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

/// Algebraic endpoint singularity exponents: the integrand may behave like
/// (t-lo)^-lower near lo and (hi-t)^-upper near hi, with 0 <= s < 1.
struct EndpointSingularity {
  double lower = 0.0;
  double upper = 0.0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over (lo, hi) to
/// absolute tolerance `tol`. Declared endpoint singularities t^-s are removed
/// by t = u^(1/(1-s)) before subdivision; f is never evaluated at an endpoint
/// carrying a singularity hint.
QuadratureResult adaptive_integrate(const Integrand& f, double lo, double hi, double tol,
                                    EndpointSingularity hint = {},
                                    int max_subdivisions = kDefaultSubdivisionBudget);

/// Integral of (t-lo)^-s.lower (hi-t)^-s.upper r(t) over (lo, hi), where the
/// caller supplies only the regular factor r. Preferred over
/// adaptive_integrate when the singular factor would under/overflow.
QuadratureResult integrate_algebraic(const Integrand& r, double lo, double hi,
                                     EndpointSingularity s, double tol,
                                     int max_subdivisions = kDefaultSubdivisionBudget);

/// Integral over (0, inf) of t^(x-1)/(1+t), split at t = 1 with (1, inf)
/// mapped back onto (0, 1] by t -> 1/t. Equals pi/sin(pi x).
QuadratureResult beta_integral(double x, double tol = kDefaultTolerance);

/// F(y) = int_0^inf (t+y)^(-1/p) (t+1+y)^(alpha-1) (t+1-y)^(-alpha) dt,
/// 0 <= y <= 1/2. At y = 1/2 the equivalent form
/// int_0^2 (t+1)^(alpha-1) t^(1/p-1) dt is integrated instead.
QuadratureResult F_of_y(double y, double p, double alpha, double tol = kDefaultTolerance);

/// I(eps) = (1/eps) [ int_1^inf y^-(1/p+eps/q)/(1+y) dy
///                   + int_0^1 x^-(1/p-eps/p)/(1+x) dx ],  0 < eps < 1.
/// eps * I(eps) tends to pi/sin(pi/p) as eps -> 0+.
QuadratureResult I_of_epsilon(double eps, double p, double tol = kDefaultTolerance);

}  // namespace hilbert
