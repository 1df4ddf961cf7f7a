#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hilbert/quadrature.hpp"

namespace hilbert {

/// A point of the proof's parameter space: x = 1/p in (0, 1/2], alpha in
/// [0, 1], and beta = (1 - alpha x)/(1 - x) so that alpha/p + beta/q = 1.
struct ProofCase {
  double x = 0.5;
  double alpha = 0.0;
  double beta = 1.0;

  static ProofCase make(double x, double alpha);
};

/// Outcome of one numerical check. Grid checks assert many inequalities
/// lhs <= rhs at once; the report carries the binding instance (smallest
/// margin after its own error budget), so `passed` holds iff every instance
/// passed. Strict checks need margin > error_budget; non-strict ones (where
/// equality is attained) need margin >= -error_budget.
struct CheckReport {
  std::string name;
  std::string parameters;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double error_budget = 0.0;
  bool strict = true;
  bool passed = false;
};

CheckReport make_report(std::string name, std::string parameters, double lhs, double rhs,
                        double error_budget, bool strict = true);

/// t^-2/p + (m+t)^-2 + alpha((m+t-1)^-2 - (m+t)^-2), unscaled.
double logconvexity_f_expression(double m, double p, double alpha, double t);
/// (t+y)^-2/p + (t+1+y)^-2 + alpha((t+1-y)^-2 - (t+1+y)^-2), unscaled.
double logconvexity_g_expression(double t, double p, double alpha, double y);

/// Positivity of t^-2/p + (m+t)^-2 + alpha((m+t-1)^-2 - (m+t)^-2), the
/// second log-derivative of f(t) = t^(-1/p) (m+t)^(alpha-1) (m+t-1)^-alpha,
/// plus f'' > 0 from central differences. Both are reported scaled by t^2.
CheckReport check_logconvexity_f(std::int64_t m, double p, double alpha,
                                 std::span<const double> t_grid);

/// Same for g_t(y) = (t+y)^(-1/p) (t+1+y)^(alpha-1) (t+1-y)^-alpha in y,
/// scaled by (t+y)^2; finite differences use h = 1e-5.
CheckReport check_logconvexity_g(double t, double p, double alpha, std::span<const double> y_grid);

/// f(n) <= int_{n-1/2}^{n+1/2} f(t) dt for 1 <= n <= n_max.
CheckReport check_midpoint_bound(std::int64_t m, double p, double alpha, std::int64_t n_max);

/// F(y) <= max{F(0), F(1/2)} at interior grid points, plus discrete convexity
/// of F along the (sorted) grid.
CheckReport check_F_convex_max(double p, double alpha, std::span<const double> y_grid);

struct InequalitySides {
  QuadratureResult lhs;
  QuadratureResult rhs;
};

/// int_1^inf ((1+2/t)^alpha - 1)/(t^x (t+2)) dt  vs  int_1^inf 1/(t^(1-x)(2t+1)) dt.
InequalitySides ineq_I_sides(const ProofCase& c, double tol = kDefaultTolerance);
/// int_1^inf ((1+2/t)^beta - 1)/(t^(1-x) (t+2)) dt  vs  int_1^inf 1/(t^x (2t+1)) dt.
InequalitySides ineq_II_sides(const ProofCase& c, double tol = kDefaultTolerance);

CheckReport check_ineq_I(const ProofCase& c, double tol = kDefaultTolerance);
CheckReport check_ineq_II(const ProofCase& c, double tol = kDefaultTolerance);

/// Along an ascending x grid at fixed alpha: LHS(I) decreasing, RHS(I)
/// increasing, LHS(II) increasing, RHS(II) decreasing. LHS(I) is skipped when
/// alpha = 0, where it vanishes identically.
CheckReport check_monotone_in_x(double alpha, std::span<const double> x_grid,
                                double tol = kDefaultTolerance);

/// 0 on (0, 1/3], 1/2 on (1/3, 2/5], 1 on (2/5, 1/2].
double alpha_schedule(double x);

/// 21/10 <= 2^(1/3) pi/sqrt 3;  2 sqrt 2 <= pi;
/// sin(2pi/5)/(2pi/5) < 2^(-2/5);  25/12 <= 2^(-3/5) pi / sin(3pi/5).
std::vector<CheckReport> check_scalar_constants();

/// Pointwise on t >= 1:
///   (1+2/t)^(1/(1-x)) <= (1+2/t)(1 + (x/(1-x)) 2/t)
///   (1+2/t)^(1/2)     <= 1 + 1/t
///   (1+2/t)^(4/3)     <= 1 + 4(2t+1)/(3t^2)
CheckReport check_bernoulli_steps(double x, std::span<const double> t_grid);

struct SweepConfig {
  int x_points = 300;
  int grid_points = 100;
  double tol = kDefaultTolerance;
  int threads = 0;  // 0: HF_THREADS or hardware concurrency
};

/// Every check above over the default grids. Report order is fixed by the
/// configuration, independent of the worker count.
std::vector<CheckReport> run_proof_sweep(const SweepConfig& config);

std::string reports_csv_header();
std::string to_csv_row(const CheckReport& r);

}  // namespace hilbert
