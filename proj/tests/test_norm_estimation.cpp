#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "hilbert/errors.hpp"
#include "hilbert/norm_estimation.hpp"
#include "oracle_values.hpp"
#include "power_iteration.hpp"

using namespace hilbert;
using doctest::Approx;
using std::numbers::pi;

TEST_CASE("theoretical norm") {
  CHECK(theoretical_norm(2.0) == Approx(pi).epsilon(1e-15));
  CHECK(theoretical_norm(3.0) == Approx(oracle::beta_one_third).epsilon(1e-15));
  for (double p : {1.1, 1.5, 4.0, 10.0}) {
    CHECK(theoretical_norm(p) == Approx(theoretical_norm(conjugate(p).q)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(theoretical_norm(1.0), Error);
}

TEST_CASE("epsilon family entries") {
  const auto f = epsilon_family(1.0, 2.0, 10);
  CHECK(f.a == f.b);
  CHECK(f.a[1] == 1.0);
  CHECK(f.a[4] == Approx(0.25).epsilon(1e-15));
  const auto g = epsilon_family(0.3, 3.0, 5);
  CHECK(g.a[1] == 1.0);
  CHECK(g.b[1] == 1.0);
  CHECK(g.a[5] == Approx(std::pow(5.0, -1.3 / 3.0)).epsilon(1e-15));
  CHECK(g.b[5] == Approx(std::pow(5.0, -1.3 / 1.5)).epsilon(1e-15));
  CHECK_THROWS_AS(epsilon_family(0.0, 2.0, 10), Error);
  CHECK_THROWS_AS(epsilon_family(0.1, 2.0, 0), Error);
}

TEST_CASE("epsilon family ratio approaches pi from below") {
  double previous = 0.0;
  for (double eps : {0.5, 0.1, 0.05, 0.01}) {
    const auto pt = epsilon_family_ratio(eps, 2.0);
    CHECK(pt.ratio > previous);
    CHECK(pt.ratio < pi);
    CHECK(pt.phi_bound >= 0.0);
    CHECK(pt.phi_bound <= 1.0);
    previous = pt.ratio;
  }
  CHECK(previous >= pi - 0.1);
}

TEST_CASE("epsilon family ratio dominates the integral chain") {
  // ratio >= eps I(eps) / ((1+eps)^(1/p) (1+eps)^(1/q)) = eps I(eps) / (1+eps).
  for (double p : {1.5, 2.0, 3.0}) {
    for (double eps : {0.5, 0.1, 0.01}) {
      const auto pt = epsilon_family_ratio(eps, p);
      const double chain = eps * I_of_epsilon(eps, p, 1e-11).value / (1.0 + eps);
      CHECK(pt.ratio >= chain);
      CHECK(pt.ratio <= theoretical_norm(p));
    }
  }
}

TEST_CASE("epsilon family ratio truncation handling") {
  const auto small = epsilon_family_ratio(0.1, 2.0, 50);
  const auto large = epsilon_family_ratio(0.1, 2.0, 2000);
  CHECK(small.ratio < pi);
  CHECK(large.ratio < pi);
  CHECK(small.ratio < large.ratio);
  try {
    epsilon_family_ratio(0.1, 2.0, kMaxFamilyTruncation + 1);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientTruncation);
  }
  CHECK_THROWS_AS(epsilon_family_ratio(1.0, 2.0), Error);
}

TEST_CASE("ascent small cases") {
  const auto one = ascent_lower_bound(KernelSpec::classical(), 2.0, 1);
  CHECK(one.lower_bound == Approx(1.0).epsilon(1e-15));
  const auto two = ascent_lower_bound(KernelSpec::classical(), 2.0, 2);
  CHECK(std::fabs(two.lower_bound - oracle::eig_2x2) <= 1e-12);
  CHECK(std::fabs(two.lower_bound - (2.0 / 3.0 + std::sqrt(13.0) / 6.0)) <= 1e-12);
  CHECK_THROWS_AS(ascent_lower_bound(KernelSpec::classical(), 2.0, 0), Error);
}

TEST_CASE("ascent matches dense power iteration at p = 2") {
  for (std::int64_t N : {16, 64}) {
    const auto est = ascent_lower_bound(KernelSpec::classical(), 2.0, N);
    CHECK(std::fabs(est.lower_bound - testing::hilbert_top_eigenvalue(N)) <= 1e-8);
  }
}

TEST_CASE("property: ascent trace is nondecreasing") {
  for (double p : {1.25, 2.0, 5.0}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      AscentOptions opt;
      opt.seed = seed;
      const auto est = ascent_lower_bound(KernelSpec::weighted_main(p), p, 64, opt);
      REQUIRE(est.trace.size() >= 2);
      for (std::size_t i = 1; i < est.trace.size(); ++i) CHECK(est.trace[i] >= est.trace[i - 1]);
      CHECK(est.lower_bound == est.trace.back());
    }
  }
}

TEST_CASE("property: ascent is nondecreasing in N and bounded") {
  for (double p : {1.25, 1.5, 2.0, 3.0, 5.0}) {
    double previous = 0.0;
    for (std::int64_t N : {16, 64, 256, 1024}) {
      const auto est = ascent_lower_bound(KernelSpec::weighted_main(p), p, N);
      CHECK(est.lower_bound >= previous - 1e-12);
      CHECK(est.lower_bound <= theoretical_norm(p) + 1e-9);
      previous = est.lower_bound;
    }
  }
}

TEST_CASE("property: ascent is symmetric under p <-> q") {
  for (double p : {1.25, 1.5, 3.0}) {
    const double q = conjugate(p).q;
    const auto a = ascent_lower_bound(KernelSpec::weighted_main(p), p, 128);
    const auto b = ascent_lower_bound(KernelSpec::weighted_main(q), q, 128);
    CHECK(std::fabs(a.lower_bound - b.lower_bound) <= 1e-8);
  }
}

TEST_CASE("ascent is reproducible from its seed") {
  AscentOptions opt;
  opt.seed = 99;
  const auto a = ascent_lower_bound(KernelSpec::weighted_main(3.0), 3.0, 100, opt);
  const auto b = ascent_lower_bound(KernelSpec::weighted_main(3.0), 3.0, 100, opt);
  CHECK(a.trace == b.trace);
}
