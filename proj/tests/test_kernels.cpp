#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "hilbert/errors.hpp"
#include "hilbert/kernels.hpp"
#include "hilbert/norm_estimation.hpp"
#include "hilbert/proof_verifier.hpp"
#include "hilbert/quadrature.hpp"
#include "oracle_values.hpp"

using namespace hilbert;
using doctest::Approx;

namespace {

// Independent kernel formulas evaluated with std::pow.
double reference_kernel(const KernelSpec& k, std::int64_t m, std::int64_t n) {
  const double dm = double(m), dn = double(n);
  const double e = 1.0 / conjugate(k.p).q - 1.0 / k.p;
  switch (k.variant) {
    case KernelVariant::Classical: return 1.0 / (dm + dn - 1.0);
    case KernelVariant::WeightedMain: return std::pow(dn / dm, e) / (dm + dn - 1.0);
    case KernelVariant::YangShift: return std::pow(dn / dm, e) / (dm + dn);
    case KernelVariant::YangHalfShift: return std::pow((dn - 0.5) / (dm - 0.5), e) / (dm + dn - 1.0);
    case KernelVariant::AlphaRow:
      return std::pow(dm / dn, 1.0 / k.p) / (std::pow(dm + dn, 1.0 - k.alpha) * std::pow(dm + dn - 1.0, k.alpha));
  }
  return 0.0;
}

}  // namespace

TEST_CASE("kernel_value examples") {
  CHECK(kernel_value(KernelSpec::classical(), 1, 1) == 1.0);
  CHECK(kernel_value(KernelSpec::weighted_main(2.0), 3, 5) == 1.0 / 7.0);
  CHECK(kernel_value(KernelSpec::weighted_main(4.0), 1, 2) == Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  for (double p : {1.3, 2.0, 5.0}) {
    for (std::int64_t m : {1, 7, 1000}) {
      CHECK(kernel_value(KernelSpec::weighted_main(p), m, m) == Approx(1.0 / (2.0 * m - 1.0)).epsilon(1e-15));
    }
  }
}

TEST_CASE("kernel_value agrees with direct formulas") {
  for (const auto& k : {KernelSpec::classical(), KernelSpec::weighted_main(1.7), KernelSpec::yang_shift(3.0),
                        KernelSpec::yang_half_shift(1.2), KernelSpec::alpha_row(2.5, 0.5)}) {
    for (std::int64_t m : {1, 2, 9, 400}) {
      for (std::int64_t n : {1, 3, 50, 7000}) {
        CHECK(testing::rel_diff(kernel_value(k, m, n), reference_kernel(k, m, n)) <= 1e-13);
      }
    }
  }
}

TEST_CASE("WeightedMain(2) equals Classical bit for bit") {
  for (std::int64_t m = 1; m <= 60; ++m) {
    for (std::int64_t n = 1; n <= 60; ++n) {
      CHECK(kernel_value(KernelSpec::weighted_main(2.0), m, n) == kernel_value(KernelSpec::classical(), m, n));
    }
  }
}

TEST_CASE("kernel arguments are validated") {
  CHECK_THROWS_AS(kernel_value(KernelSpec::classical(), 0, 1), Error);
  CHECK_THROWS_AS(kernel_value(KernelSpec::weighted_main(1.0), 1, 1), Error);
  CHECK_THROWS_AS(kernel_value(KernelSpec::alpha_row(2.0, 1.5), 1, 1), Error);
  CHECK_THROWS_AS(bilinear_form(KernelSpec::classical(), Sequence(0, {1.0}), Sequence(1, {1.0})), Error);
  CHECK_THROWS_AS(bilinear_form(KernelSpec::classical(), Sequence(1, {-1.0}), Sequence(1, {1.0})), Error);
}

TEST_CASE("kernel spec text round trip") {
  const auto k = KernelSpec::alpha_row(1.5, 0.25);
  CHECK(to_string(k) == "AlphaRow,1.5,0.25");
  const auto back = parse_kernel_spec(to_string(k));
  CHECK(back.variant == k.variant);
  CHECK(back.p == k.p);
  CHECK(back.alpha == k.alpha);
  CHECK_THROWS_AS(parse_kernel_spec("Nope,2,0"), Error);
  CHECK_THROWS_AS(parse_kernel_spec("Classical,2"), Error);
  CHECK_THROWS_AS(parse_kernel_spec("WeightedMain,x,0"), Error);
}

TEST_CASE("bilinear_form examples") {
  for (double p : {1.5, 2.0, 4.0}) {
    CHECK(bilinear_form(KernelSpec::weighted_main(p), Sequence::spike(1, 1), Sequence::spike(1, 1)) == 1.0);
  }
  CHECK(bilinear_form(KernelSpec::weighted_main(4.0), Sequence::spike(1, 1), Sequence::spike(1, 2)) ==
        Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(bilinear_form(KernelSpec::classical(), Sequence(1, {1, 1}), Sequence(1, {1, 1})) ==
        Approx(7.0 / 3.0).epsilon(1e-15));
  CHECK(bilinear_form(KernelSpec::classical(), Sequence(1, {}), Sequence(1, {1, 1})) == 0.0);
}

TEST_CASE("apply_operator examples") {
  const auto c = apply_operator(KernelSpec::classical(), Sequence::spike(1, 1), 3);
  REQUIRE(c.size() == 3);
  CHECK(c[1] == 1.0);
  CHECK(c[2] == Approx(0.5).epsilon(1e-15));
  CHECK(c[3] == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(apply_operator(KernelSpec::classical(), Sequence::zeros(1, 4), 5).is_zero());
  const auto d = apply_operator(KernelSpec::weighted_main(2.0), Sequence(1, {1, 1}), 2);
  CHECK(d[1] == Approx(1.5).epsilon(1e-15));
  CHECK(d[2] == Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK_THROWS_AS(apply_operator(KernelSpec::classical(), Sequence::spike(1, 1), 0), Error);
}

TEST_CASE("property: forms agree with a naive double loop") {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const double p = 1.05 + 6.0 * rng.uniform_open_zero();
    const auto a = testing::random_sequence(rng, 150);
    const auto b = testing::random_sequence(rng, 150);
    for (const auto& k : {KernelSpec::classical(), KernelSpec::weighted_main(p), KernelSpec::yang_shift(p),
                          KernelSpec::yang_half_shift(p), KernelSpec::alpha_row(p, 0.5)}) {
      const double ref = testing::naive_form([&](auto m, auto n) { return reference_kernel(k, m, n); }, a, b);
      CHECK(testing::rel_diff(bilinear_form(k, a, b), ref) <= 1e-12);
      // The operator and its transpose reproduce the same pairing.
      const auto c = apply_operator(k, a, b.last_index());
      const auto d = apply_transpose(k, b, a.last_index());
      double via_c = 0.0, via_d = 0.0;
      for (std::int64_t n = 1; n <= b.last_index(); ++n) via_c += c[n] * b[n];
      for (std::int64_t m = 1; m <= a.last_index(); ++m) via_d += d[m] * a[m];
      CHECK(testing::rel_diff(via_c, ref) <= 1e-12);
      CHECK(testing::rel_diff(via_d, ref) <= 1e-12);
    }
  }
}

TEST_CASE("property: transposition symmetry of WeightedMain") {
  SplitMix64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const double p = 1.05 + 8.0 * rng.uniform_open_zero();
    const double q = conjugate(p).q;
    const auto a = testing::random_sequence(rng, 400);
    const auto b = testing::random_sequence(rng, 400);
    CHECK(testing::rel_diff(bilinear_form(KernelSpec::weighted_main(p), a, b),
                            bilinear_form(KernelSpec::weighted_main(q), b, a)) <= 1e-13);
  }
}

TEST_CASE("property: forms are monotone in every entry") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const double p = 1.1 + 4.0 * rng.uniform_open_zero();
    auto a = testing::random_sequence(rng, 100);
    const auto b = testing::random_sequence(rng, 100);
    for (const auto& k : {KernelSpec::weighted_main(p), KernelSpec::yang_shift(p), KernelSpec::yang_half_shift(p)}) {
      const double before = bilinear_form(k, a, b);
      auto bumped = a;
      bumped.mutable_values()[rng.below(a.size())] += 0.5;
      CHECK(bilinear_form(k, bumped, b) >= before);
    }
  }
}

TEST_CASE("property: the weighted inequality and both shifted variants") {
  SplitMix64 rng(24);
  for (double p : {1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0}) {
    const double q = conjugate(p).q;
    const double bound = theoretical_norm(p);
    for (int trial = 0; trial < 60; ++trial) {
      auto a = testing::random_sequence(rng, 1500);
      auto b = testing::random_sequence(rng, 1500);
      // Half the trials use near-extremal decay m^(-1/p).
      if (trial % 2) {
        for (std::size_t i = 0; i < a.size(); ++i) a.mutable_values()[i] *= std::pow(double(i + 1), -1.0 / p);
        for (std::size_t i = 0; i < b.size(); ++i) b.mutable_values()[i] *= std::pow(double(i + 1), -1.0 / q);
      }
      const double norms = lp_norm(a, p) * lp_norm(b, q);
      for (const auto& k : {KernelSpec::classical(), KernelSpec::weighted_main(p), KernelSpec::yang_shift(p),
                            KernelSpec::yang_half_shift(p)}) {
        CHECK(bilinear_form(k, a, b) / norms <= bound + 1e-12);
      }
    }
  }
}

TEST_CASE("row_sum_alpha matches oracle sums") {
  const auto r1 = row_sum_alpha(1, 2.0, 0.0, 1e-11);
  CHECK(std::fabs(r1.value - oracle::row_m1_p2_a0) <= 1e-11);
  CHECK(r1.error_bound <= 1e-11);
  CHECK(r1.value < std::numbers::pi);
  const auto r2 = row_sum_alpha(1, 3.0, 1.0, 1e-11);
  CHECK(std::fabs(r2.value - oracle::row_m1_p3_a1) <= 1e-11);
  CHECK(r2.value <= 2.0 * std::numbers::pi / std::sqrt(3.0));
}

TEST_CASE("property: row sums stay below pi/sin(pi/p) where F(1/2) does") {
  // The row bound follows from F(y) <= max{F(0), F(1/2)}, so it is claimed
  // exactly for the (p, alpha) with F(1/2) <= pi/sin(pi/p).
  int admissible = 0;
  for (double p : {1.25, 1.5, 2.0, 3.0, 6.0}) {
    const double bound = theoretical_norm(p);
    for (double alpha : {0.0, 0.5, 1.0}) {
      if (F_of_y(0.5, p, alpha).value > bound) continue;
      ++admissible;
      for (std::int64_t m : {1, 2, 5, 10, 33, 100}) {
        const auto r = row_sum_alpha(m, p, alpha, 1e-10);
        CHECK(r.value + r.error_bound <= bound);
      }
    }
  }
  // Per the oracle only (3, 1) and (6, 1) fall outside.
  CHECK(admissible == 13);
  // The schedule's own choices are always admissible.
  for (double p : {2.0, 2.5, 3.0, 4.0, 8.0}) {
    const double alpha = alpha_schedule(1.0 / p);
    CHECK(F_of_y(0.5, p, alpha).value <= theoretical_norm(p));
  }
}

TEST_CASE("row bound fails outside the admissible range") {
  // p = 6, alpha = 1, m = 1 is zeta(7/6), above 2 pi.
  const auto r = row_sum_alpha(1, 6.0, 1.0, 1e-10);
  CHECK(r.value - r.error_bound > theoretical_norm(6.0));
  CHECK(F_of_y(0.5, 6.0, 1.0).value > theoretical_norm(6.0));
}

TEST_CASE("row_sum_alpha arguments") {
  CHECK_THROWS_AS(row_sum_alpha(0, 2.0, 0.0, 1e-10), Error);
  CHECK_THROWS_AS(row_sum_alpha(1, 2.0, 2.0, 1e-10), Error);
  CHECK_THROWS_AS(row_sum_alpha(1, 0.9, 0.0, 1e-10), Error);
}
