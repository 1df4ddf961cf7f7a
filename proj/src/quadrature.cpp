#include "hilbert/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "hilbert/summation.hpp"

namespace hilbert {

namespace {

// Kronrod abscissae and weights for the 15-point rule; every other abscissa
// (odd index) is a node of the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double magnitude;  // integral of |g|

  bool operator<(const Panel& o) const noexcept { return error < o.error; }
};

double checked(const Integrand& g, double t) {
  const double v = g(t);
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::InvalidInput, "integrand is not finite at t = " + std::to_string(t));
  }
  return v;
}

Panel gauss_kronrod(const Integrand& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(g, center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(g, center - dx);
    f2[j] = checked(g, center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(f1[j] - reskh) + std::fabs(f2[j] - reskh));
  }
  const double ahalf = std::fabs(half);
  resabs *= ahalf;
  resasc *= ahalf;
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return Panel{a, b, resk * half, err, resabs};
}

QuadratureResult summarize(const std::vector<Panel>& panels, int subdivisions) {
  CompensatedSum value, error;
  for (const auto& p : panels) {
    value.add(p.value);
    error.add(p.error);
  }
  return QuadratureResult{value.value(), error.value(), subdivisions};
}

QuadratureResult adaptive_core(const Integrand& g, double a, double b, double tol, int budget) {
  std::priority_queue<Panel> heap;
  heap.push(gauss_kronrod(g, a, b));
  double total_error = heap.top().error;
  int subdivisions = 0;

  auto drain = [&heap]() {
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
      panels.push_back(heap.top());
      heap.pop();
    }
    return panels;
  };

  while (total_error > tol) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    const bool too_narrow = !(mid > worst.a && mid < worst.b);
    if (subdivisions >= budget || too_narrow) {
      const auto best = summarize(drain(), subdivisions);
      throw AccuracyError("quadrature did not reach tolerance " + std::to_string(tol) +
                              " (best error estimate " + std::to_string(best.error_estimate) + ")",
                          best);
    }
    heap.pop();
    const Panel left = gauss_kronrod(g, worst.a, mid);
    const Panel right = gauss_kronrod(g, mid, worst.b);
    heap.push(left);
    heap.push(right);
    ++subdivisions;
    total_error += left.error + right.error - worst.error;
    if (total_error <= tol) {
      // Re-sum from scratch so incremental drift cannot end the loop early.
      CompensatedSum exact;
      auto copy = heap;
      while (!copy.empty()) {
        exact.add(copy.top().error);
        copy.pop();
      }
      total_error = exact.value();
    }
  }
  return summarize(drain(), subdivisions);
}

void check_interval(double lo, double hi, double tol) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorKind::Parameter, "integration bounds must be finite with lo < hi");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::Parameter, "tolerance must be positive");
}

void check_singularity(double s) {
  if (!(s >= 0.0 && s < 1.0)) {
    throw Error(ErrorKind::Parameter, "singularity exponent must lie in [0, 1), got " + std::to_string(s));
  }
}

// Integral of (t-lo)^-s r(t) over (lo, hi) via t = lo + L u^k, k = 1/(1-s):
// the weight and the Jacobian cancel to the constant k L^(1-s).
QuadratureResult lower_singular(const Integrand& r, double lo, double hi, double s, double tol,
                                int budget) {
  const double length = hi - lo;
  if (s == 0.0) return adaptive_core(r, lo, hi, tol, budget);
  const double k = 1.0 / (1.0 - s);
  const double scale = k * std::pow(length, 1.0 - s);
  const Integrand g = [&](double u) { return scale * r(lo + length * std::pow(u, k)); };
  return adaptive_core(g, 0.0, 1.0, tol, budget);
}

QuadratureResult upper_singular(const Integrand& r, double lo, double hi, double s, double tol,
                                int budget) {
  const double length = hi - lo;
  if (s == 0.0) return adaptive_core(r, lo, hi, tol, budget);
  const double k = 1.0 / (1.0 - s);
  const double scale = k * std::pow(length, 1.0 - s);
  const Integrand g = [&](double u) { return scale * r(hi - length * std::pow(u, k)); };
  return adaptive_core(g, 0.0, 1.0, tol, budget);
}

QuadratureResult combine(const QuadratureResult& x, const QuadratureResult& y) {
  return QuadratureResult{x.value + y.value, x.error_estimate + y.error_estimate,
                          x.subdivisions + y.subdivisions};
}

void check_p(double p) {
  if (!std::isfinite(p) || p <= 1.0) {
    throw Error(ErrorKind::Domain, "p must lie in (1, inf), got " + std::to_string(p));
  }
}

}  // namespace

QuadratureResult integrate_algebraic(const Integrand& r, double lo, double hi, EndpointSingularity s,
                                     double tol, int max_subdivisions) {
  check_interval(lo, hi, tol);
  check_singularity(s.lower);
  check_singularity(s.upper);
  if (s.upper == 0.0) return lower_singular(r, lo, hi, s.lower, tol, max_subdivisions);
  if (s.lower == 0.0) return upper_singular(r, lo, hi, s.upper, tol, max_subdivisions);

  const double mid = 0.5 * (lo + hi);
  const Integrand left_r = [&](double t) { return std::pow(hi - t, -s.upper) * r(t); };
  const Integrand right_r = [&](double t) { return std::pow(t - lo, -s.lower) * r(t); };
  return combine(lower_singular(left_r, lo, mid, s.lower, 0.5 * tol, max_subdivisions / 2),
                 upper_singular(right_r, mid, hi, s.upper, 0.5 * tol, max_subdivisions / 2));
}

QuadratureResult adaptive_integrate(const Integrand& f, double lo, double hi, double tol,
                                    EndpointSingularity hint, int max_subdivisions) {
  check_interval(lo, hi, tol);
  check_singularity(hint.lower);
  check_singularity(hint.upper);
  const Integrand r = [&](double t) {
    double v = f(t);
    if (hint.lower > 0.0) v *= std::pow(t - lo, hint.lower);
    if (hint.upper > 0.0) v *= std::pow(hi - t, hint.upper);
    return v;
  };
  return integrate_algebraic(r, lo, hi, hint, tol, max_subdivisions);
}

QuadratureResult beta_integral(double x, double tol) {
  if (!(x > 0.0 && x < 1.0)) {
    throw Error(ErrorKind::Domain, "beta_integral diverges unless 0 < x < 1, got " + std::to_string(x));
  }
  const Integrand r = [](double v) { return 1.0 / (1.0 + v); };
  // (0,1]: t^(x-1)/(1+t).  [1,inf) under t = 1/v: v^(-x)/(1+v).
  const auto near = integrate_algebraic(r, 0.0, 1.0, {1.0 - x, 0.0}, 0.5 * tol);
  const auto far = integrate_algebraic(r, 0.0, 1.0, {x, 0.0}, 0.5 * tol);
  return combine(near, far);
}

QuadratureResult F_of_y(double y, double p, double alpha, double tol) {
  check_p(p);
  if (!(y >= 0.0 && y <= 0.5)) {
    throw Error(ErrorKind::Domain, "F_of_y needs 0 <= y <= 1/2, got " + std::to_string(y));
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::Domain, "F_of_y needs 0 <= alpha <= 1, got " + std::to_string(alpha));
  }
  const double x = 1.0 / p;
  if (y == 0.5) {
    const Integrand r = [&](double t) { return std::pow(t + 1.0, alpha - 1.0); };
    return integrate_algebraic(r, 0.0, 2.0, {1.0 - x, 0.0}, tol);
  }
  // (0,1]: the factor t^(-1/p) is pulled out as the declared singularity.
  const Integrand near_r = [&](double t) {
    const double lead = y == 0.0 ? 1.0 : std::exp(x * (std::log(t) - std::log(t + y)));
    return lead * std::pow(t + 1.0 + y, alpha - 1.0) * std::pow(t + 1.0 - y, -alpha);
  };
  // [1,inf) under t = 1/v, after cancelling v^(1+1/p) against the Jacobian.
  const Integrand far_r = [&](double v) {
    return std::pow(1.0 + y * v, -x) * std::pow(1.0 + (1.0 + y) * v, alpha - 1.0) *
           std::pow(1.0 + (1.0 - y) * v, -alpha);
  };
  return combine(integrate_algebraic(near_r, 0.0, 1.0, {x, 0.0}, 0.5 * tol),
                 integrate_algebraic(far_r, 0.0, 1.0, {1.0 - x, 0.0}, 0.5 * tol));
}

QuadratureResult I_of_epsilon(double eps, double p, double tol) {
  check_p(p);
  if (!(eps > 0.0 && eps < 1.0) || !std::isfinite(eps)) {
    throw Error(ErrorKind::Domain,
                "I_of_epsilon needs 0 < eps < 1 (x-integral exponent (1-eps)/p must stay positive)");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::Parameter, "tolerance must be positive");
  const double q = p / (p - 1.0);
  const double upper_exp = 1.0 / p + eps / q;
  const double lower_exp = (1.0 - eps) / p;
  const Integrand r = [](double v) { return 1.0 / (1.0 + v); };
  const double part_tol = 0.5 * tol * eps;
  const auto upper = integrate_algebraic(r, 0.0, 1.0, {1.0 - upper_exp, 0.0}, part_tol);
  const auto lower = integrate_algebraic(r, 0.0, 1.0, {lower_exp, 0.0}, part_tol);
  const auto sum = combine(upper, lower);
  return QuadratureResult{sum.value / eps, sum.error_estimate / eps, sum.subdivisions};
}

}  // namespace hilbert
