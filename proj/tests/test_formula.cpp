#include <doctest.h>

#include <cmath>
#include <iostream>

#include "collatz/formula.hpp"
#include "oracles.hpp"

using namespace collatz;

namespace {

// eps(n) from the odd terms alone: 2^e * prod(3 n_i) = 3^alpha * n * prod(3 n_i + 1)
// rearranges to eps = sum log2(1 + 1/(3 n_i)).
double residue_from_odd_terms(const std::vector<Natural>& odd_terms) {
  double sum = 0.0;
  for (const auto& t : odd_terms) sum += std::log1p(1.0 / (3.0 * t.get_d()));
  return sum / std::log(2.0);
}

}  // namespace

TEST_CASE("ceil_log2 examples") {
  CHECK(ceil_log2(Natural(1)) == 0);
  CHECK(ceil_log2(Natural(2)) == 1);
  CHECK(ceil_log2(Natural(3)) == 2);
  CHECK(ceil_log2(Natural(30)) == 5);
  CHECK(ceil_log2(Natural(1024)) == 10);
  CHECK(ceil_log2(Natural(1025)) == 11);
  CHECK(ceil_log2(Natural(109175040)) == 27);
  CHECK_THROWS_AS(ceil_log2(Natural(0)), std::domain_error);
}

TEST_CASE("ceil_log2 brackets m between consecutive powers of two") {
  for (unsigned long m = 1; m <= 1'000'000; ++m) {
    const std::uint64_t c = ceil_log2(Natural(m));
    REQUIRE(m <= (1UL << c));
    if (m > 1) REQUIRE((1UL << (c - 1)) < m);
  }
}

TEST_CASE("ceil_log2 agrees with doubling on big values") {
  for (unsigned long k : {63UL, 64UL, 65UL, 500UL, 4000UL}) {
    const Natural p = oracle::pow_ui(2, k);
    for (const Natural& m : {Natural(p - 1), p, Natural(p + 1)}) {
      CHECK(ceil_log2(m) == oracle::ceil_log2_by_doubling(m));
    }
  }
}

TEST_CASE("predicted stopping time examples") {
  const std::vector<std::uint64_t> expected = {7, 9, 12, 14, 17, 19, 22, 25, 27, 30, 32, 35};
  for (std::uint64_t a = 0; a < expected.size(); ++a) {
    CHECK(predicted_stopping_time(Natural(65), a) == expected[a]);
  }
  for (unsigned long k = 0; k <= 100; ++k) CHECK(predicted_stopping_time(oracle::pow_ui(2, k), 0) == k);
  CHECK_THROWS_AS(predicted_stopping_time(Natural(0), 1), std::domain_error);
}

TEST_CASE("shifted route equals ceil_log2 of the materialized 6^alpha n") {
  PowerOfThreeCache powers;
  for (unsigned long n = 1; n <= 1000; ++n) {
    for (unsigned long a = 0; a <= 40; ++a) {
      const Natural full = oracle::pow_ui(6, a) * n;
      REQUIRE(predicted_stopping_time(Natural(n), a, powers) == ceil_log2(full));
    }
  }
}

TEST_CASE("adjacent alpha curves are 2 or 3 apart") {
  PowerOfThreeCache powers;
  for (unsigned long n = 1; n <= 2000; ++n) {
    std::uint64_t prev = predicted_stopping_time(Natural(n), 0, powers);
    for (unsigned long a = 1; a <= 50; ++a) {
      const std::uint64_t next = predicted_stopping_time(Natural(n), a, powers);
      REQUIRE((next - prev == 2 || next - prev == 3));
      prev = next;
    }
  }
}

TEST_CASE("6^alpha n is a power of two only at alpha 0") {
  for (unsigned long n = 1; n <= 1000; ++n) {
    for (unsigned long a = 0; a <= 20; ++a) {
      const bool pow2 = is_power_of_two(oracle::pow_ui(6, a) * n);
      REQUIRE(pow2 == (a == 0 && is_power_of_two(Natural(n))));
    }
  }
  // The ceiling is exact there and the residue is exactly zero.
  for (unsigned long k = 0; k <= 64; ++k) {
    const Natural n = oracle::pow_ui(2, k);
    CHECK(residue(n, trajectory_stats(n)) == 0.0);
  }
}

TEST_CASE("residue examples") {
  CHECK(residue(Natural(1), trajectory_stats(Natural(1))) == 0.0);
  CHECK(residue(Natural(65), trajectory_stats(Natural(65))) == doctest::Approx(0.29793218120229525).epsilon(1e-12));
  CHECK(residue(Natural(5), trajectory_stats(Natural(5))) == doctest::Approx(0.0931094043914813).epsilon(1e-12));
  CHECK(std::abs(residue(Natural(65), trajectory_stats(Natural(65))) - 0.2979) < 5e-5);
}

TEST_CASE("residue matches the odd-term product to 1e-9") {
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    const auto st = trajectory_stats(from_u64(n));
    REQUIRE(std::abs(residue(from_u64(n), st) - residue_from_odd_terms(st.odd_terms)) < 1e-9);
  }
}

TEST_CASE("fast residue matches the 256-bit evaluation") {
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    const auto st = trajectory_stats(from_u64(n), {std::nullopt, false});
    REQUIRE(std::abs(residue(from_u64(n), st) - residue_precise(from_u64(n), st)) < 1e-12);
  }
  gmp_randclass gen(gmp_randinit_mt);
  gen.seed(99);
  for (unsigned long bits : {100UL, 1000UL, 5000UL}) {
    const Natural n = gen.get_z_bits(bits) + 1;
    const auto st = trajectory_stats(n);
    CHECK(std::abs(residue(n, st) - residue_precise(n, st)) < 1e-12);
    CHECK(std::abs(residue(n, st) - residue_from_odd_terms(st.odd_terms)) < 1e-9);
  }
}

TEST_CASE("residue lies in [0, 1) and stays under 0.326 below 1e5") {
  double max_eps = 0.0;
  std::uint64_t argmax = 0;
  PowerOfThreeCache powers;
  for (std::uint64_t n = 1; n < 100'000; ++n) {
    const auto st = trajectory_stats(from_u64(n), {std::nullopt, false});
    REQUIRE(check_formula(from_u64(n), st, powers).holds);
    const double eps = residue(from_u64(n), st, powers);
    REQUIRE(eps >= 0.0);
    REQUIRE(eps < 1.0);
    if (eps > max_eps) {
      max_eps = eps;
      argmax = n;
    }
  }
  MESSAGE("max eps below 1e5: " << max_eps << " at n=" << argmax);
  CHECK(max_eps < kResidueBound);
}

TEST_CASE("check_formula verdicts") {
  const auto v65 = check_formula(Natural(65), trajectory_stats(Natural(65)));
  CHECK(v65.holds);
  CHECK(v65.true_s == 27);
  CHECK(v65.predicted_s == 27);
  CHECK(check_formula(Natural(1), trajectory_stats(Natural(1))).holds);

  auto tampered = trajectory_stats(Natural(65));
  tampered.s = 26;
  const auto bad = check_formula(Natural(65), tampered);
  CHECK_FALSE(bad.holds);
  CHECK_FALSE(static_cast<bool>(bad));
  CHECK(bad.true_s == 26);
  CHECK(bad.predicted_s == 27);
}

TEST_CASE("formula holds on [1, 1e4] against the doubling oracle") {
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    const auto ref = oracle::walk(n);
    const std::uint64_t predicted = oracle::ceil_log2_by_doubling(oracle::pow_ui(6, ref.alpha) * n);
    REQUIRE(predicted == ref.s);
    REQUIRE(check_formula(from_u64(n), trajectory_stats(from_u64(n), {std::nullopt, false})).holds);
  }
}

TEST_CASE("power-of-three cache beyond its stored range") {
  PowerOfThreeCache powers(8);
  for (unsigned long a : {0UL, 5UL, 8UL, 9UL, 300UL, 7UL}) CHECK(powers.power(a) == oracle::pow_ui(3, a));
}

TEST_CASE("stopping profile of 27") {
  const auto p = stopping_profile(Natural(27));
  CHECK(p.s == 111);
  CHECK(p.alpha == 41);
  CHECK(p.even_steps == 70);
  CHECK(p.verdict.holds);
  CHECK(p.residue >= 0.0);
  CHECK(p.residue < kResidueBound);
}
