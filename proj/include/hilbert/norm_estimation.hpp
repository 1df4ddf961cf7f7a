#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hilbert/kernels.hpp"
#include "hilbert/kp_space.hpp"
#include "hilbert/quadrature.hpp"
#include "hilbert/sequence_space.hpp"

namespace hilbert {

/// pi / sin(pi/p): the l^p and K^p norm of the Hilbert matrix and the
/// constant of every weighted inequality in this library.
double theoretical_norm(double p);

enum class EstimateMethod { EpsilonFamily, Ascent };

struct NormEstimate {
  double lower_bound = 0.0;
  double p = 2.0;
  EstimateMethod method = EstimateMethod::Ascent;
  KernelSpec kernel;
  double eps = 0.0;            // EpsilonFamily
  std::int64_t size = 0;       // truncation M or N
  int iterations = 0;          // Ascent: full (b, a) sweeps performed
  std::vector<double> trace;   // objective after every half-step
  double tail_budget = 0.0;    // EpsilonFamily
};

struct SharpnessPoint {
  double eps = 0.0;
  double ratio = 0.0;          // certified lower bound of B(a,b)/(|a|_p |b|_q)
  double phi_bound = 0.0;      // upper bound of phi(eps) = zeta(1+eps) - 1/eps
  double psi_bound = 0.0;      // same for the b-side sums
  std::int64_t truncation = 0;
  double block = 0.0;          // exact double sum over [1,M]^2
  double numerator_tail = 0.0; // certified lower bound of the remaining terms
  double tail_budget = 0.0;    // quadrature error subtracted from the tail
};

struct SequencePair {
  Sequence a;
  Sequence b;
};

inline constexpr std::int64_t kDefaultFamilyTruncation = 1000;
inline constexpr std::int64_t kMaxFamilyTruncation = 100000;

/// a_m = m^(-(1+eps)/p), b_n = n^(-(1+eps)/q) for 1 <= m, n <= M.
SequencePair epsilon_family(double eps, double p, std::int64_t M);

/// Lower-bound integral for the part of the weighted double sum of the
/// eps-family lying outside [1,M]^2: the integral over [1,inf)^2 minus
/// [1,M+1)^2 of x^(-1/q-eps/p) y^(-1/p-eps/q) / (x+y), reduced to one
/// dimension by y -> xy.
QuadratureResult weighted_tail_integral(double eps, double p, std::int64_t M, double tol = 1e-9);

/// Certified lower bound on the normalized weighted form of the infinite
/// eps-family: exact block over [1,M]^2 plus weighted_tail_integral (minus its
/// error estimate), divided by upper bounds of both norms.
SharpnessPoint epsilon_family_ratio(double eps, double p,
                                    std::int64_t M = kDefaultFamilyTruncation);

/// The same bound reached through K^p: the eps-family is mapped to Taylor
/// coefficients by the inverse isometry, H is applied to the coefficients and
/// paired against the dual eps-family. Bounds ||H f||_{K^p} / ||f||_{K^p}
/// from below for the (infinite) image family f.
SharpnessPoint kp_epsilon_family_ratio(double eps, double p,
                                       std::int64_t M = kDefaultFamilyTruncation);

struct AscentOptions {
  int max_iterations = 1000;
  std::optional<std::uint64_t> seed;  // unset: uniform start vector
  double relative_tolerance = 1e-12;
};

/// Alternating maximization of B(a,b) over the unit balls of l^p and l^q on
/// the N x N truncation of the kernel.
NormEstimate ascent_lower_bound(const KernelSpec& spec, double p, std::int64_t N,
                                const AscentOptions& options = {});

/// ||H f||_{K^p} (coefficients 0..n_max) / ||f||_{K^p}.
double kp_ratio(const TaylorFunction& f, double p, std::int64_t n_max);

}  // namespace hilbert
