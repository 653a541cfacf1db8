#include <doctest.h>

#include <algorithm>

#include "collatz/formula.hpp"
#include "collatz/sieve.hpp"
#include "collatz/trajectory.hpp"
#include "oracles.hpp"

using namespace collatz;

namespace {

bool contains(const std::vector<std::uint64_t>& v, std::uint64_t x) { return std::binary_search(v.begin(), v.end(), x); }

bool subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::uint64_t s_of(const Natural& n) { return trajectory_stats(n, {std::nullopt, false}).s; }

}  // namespace

TEST_CASE("allowed stopping times of 65") {
  const auto sets = allowed_stopping_times(Natural(65), 35);
  CHECK(sets.allowed == std::vector<std::uint64_t>{7, 9, 12, 14, 17, 19, 22, 25, 27, 30, 32, 35});
  CHECK(contains(sets.prohibited, 15));
  CHECK(contains(sets.prohibited, 26));
  CHECK(contains(sets.prohibited, 34));
  CHECK(contains(sets.allowed, 27));
  CHECK(sets.window_lo == 7);
  CHECK(sets.window_hi == 35);
}

TEST_CASE("allowed stopping times of 1 and of powers of two") {
  const auto one = allowed_stopping_times(Natural(1), 10);
  CHECK(one.allowed == std::vector<std::uint64_t>{0, 3, 6, 8});
  CHECK(one.prohibited == std::vector<std::uint64_t>{1, 2, 4, 5, 7, 9, 10});
  for (unsigned long k = 0; k <= 80; ++k) {
    const auto sets = allowed_stopping_times(oracle::pow_ui(2, k), k);
    CHECK(sets.allowed == std::vector<std::uint64_t>{k});
  }
  CHECK_THROWS_AS(allowed_stopping_times(Natural(65), 6), std::invalid_argument);
  CHECK_THROWS_AS(allowed_stopping_times(Natural(0), 6), std::domain_error);
}

TEST_CASE("allowed and prohibited partition the window") {
  for (unsigned long n = 1; n <= 2000; ++n) {
    const std::uint64_t bound = 200;
    const auto sets = allowed_stopping_times(Natural(n), bound);
    REQUIRE(sets.window_lo == ceil_log2(Natural(n)));
    REQUIRE(sets.allowed.front() == sets.window_lo);
    REQUIRE(sets.allowed.size() + sets.prohibited.size() == bound - sets.window_lo + 1);
    std::vector<std::uint64_t> both;
    std::set_intersection(sets.allowed.begin(), sets.allowed.end(), sets.prohibited.begin(), sets.prohibited.end(),
                          std::back_inserter(both));
    REQUIRE(both.empty());
    for (std::size_t i = 1; i < sets.allowed.size(); ++i) {
      const auto gap = sets.allowed[i] - sets.allowed[i - 1];
      REQUIRE((gap == 2 || gap == 3));
    }
  }
}

TEST_CASE("the true stopping time is never prohibited below 1e5") {
  for (std::uint64_t n = 1; n < 100'000; ++n) {
    const Natural value = from_u64(n);
    const std::uint64_t s = s_of(value);
    const auto sets = allowed_stopping_times(value, s);
    REQUIRE(sets.allowed.back() == s);
  }
}

TEST_CASE("neighbors examples") {
  const auto e65 = neighbors(Natural(65));
  REQUIRE(e65.size() == 2);
  CHECK(e65[0] == PropagationEdge{65, 196, -1, EdgeRule::triple_plus_one});
  CHECK(e65[1] == PropagationEdge{65, 130, +1, EdgeRule::double_up});

  const auto e16 = neighbors(Natural(16));
  REQUIRE(e16.size() == 3);
  CHECK(e16[0] == PropagationEdge{16, 8, -1, EdgeRule::halve});
  CHECK(e16[1] == PropagationEdge{16, 32, +1, EdgeRule::double_up});
  CHECK(e16[2] == PropagationEdge{16, 5, +1, EdgeRule::inverse_odd});

  const auto e1 = neighbors(Natural(1));
  REQUIRE(e1.size() == 1);
  CHECK(e1[0] == PropagationEdge{1, 2, +1, EdgeRule::double_up});

  // (4 - 1) / 3 = 1 is odd, but 1 is terminal and S(1) != S(4) + 1.
  const auto e4 = neighbors(Natural(4));
  REQUIRE(e4.size() == 2);
  CHECK(e4[1].rule == EdgeRule::double_up);

  // (10 - 1) / 3 = 3 is odd, (7 - 1) / 3 = 2 is even.
  CHECK(neighbors(Natural(10)).back().rule == EdgeRule::inverse_odd);
  CHECK(neighbors(Natural(7)).size() == 2);
}

TEST_CASE("edge invariants") {
  for (unsigned long n = 1; n <= 5000; ++n) {
    const auto edges = neighbors(Natural(n));
    REQUIRE(edges.size() <= 3);
    for (const auto& e : edges) {
      switch (e.rule) {
        case EdgeRule::halve:
          REQUIRE(n % 2 == 0);
          REQUIRE(e.to_n * 2 == n);
          REQUIRE(e.s_shift == -1);
          break;
        case EdgeRule::triple_plus_one:
          REQUIRE(n % 2 == 1);
          REQUIRE(n >= 3);
          REQUIRE(e.to_n == 3 * n + 1);
          REQUIRE(e.s_shift == -1);
          break;
        case EdgeRule::double_up:
          REQUIRE(e.to_n == 2 * n);
          REQUIRE(e.s_shift == +1);
          break;
        case EdgeRule::inverse_odd:
          REQUIRE(e.to_n * 3 + 1 == n);
          REQUIRE(mpz_odd_p(e.to_n.get_mpz_t()));
          REQUIRE(e.to_n > 1);
          REQUIRE(e.s_shift == +1);
          break;
      }
    }
  }
}

TEST_CASE("step relations hold against simulated stopping times") {
  for (unsigned long n = 2; n <= 10'000; ++n) {
    const std::uint64_t s = s_of(Natural(n));
    for (const auto& e : neighbors(Natural(n))) {
      REQUIRE(static_cast<std::int64_t>(s_of(e.to_n)) == static_cast<std::int64_t>(s) + e.s_shift);
    }
  }
}

TEST_CASE("depth 0 returns the seeds' own sets") {
  const auto result = propagate_prohibited({{Natural(65), 35}, {Natural(7), 40}}, 0);
  REQUIRE(result.size() == 2);
  CHECK(result.at({Natural(65), 35}) == allowed_stopping_times(Natural(65), 35));
  CHECK(result.at({Natural(7), 40}) == allowed_stopping_times(Natural(7), 40));
}

TEST_CASE("one level from 65") {
  const auto result = propagate_prohibited({{Natural(65), 35}}, 1);
  REQUIRE(result.size() == 3);
  const auto& at130 = result.at({Natural(130), 36});
  CHECK(at130.window_lo == 8);
  CHECK(at130.window_hi == 36);
  CHECK(contains(at130.prohibited, 16));
  CHECK(contains(at130.prohibited, 27));
  CHECK(contains(at130.prohibited, 35));
  CHECK_FALSE(contains(at130.prohibited, s_of(Natural(130))));

  const auto source = allowed_stopping_times(Natural(65), 35);
  std::vector<std::uint64_t> shifted;
  for (auto p : source.prohibited) shifted.push_back(p + 1);
  CHECK(at130.prohibited == shifted);

  const auto& at196 = result.at({Natural(196), 34});
  CHECK_FALSE(contains(at196.prohibited, s_of(Natural(196))));
}

TEST_CASE("propagation never prohibits a true stopping time") {
  std::vector<SieveSeed> seeds;
  for (unsigned long n : {3UL, 7UL, 27UL, 65UL, 97UL, 871UL}) seeds.push_back({Natural(n), s_of(Natural(n)) + 30});
  const auto result = propagate_prohibited(seeds, 6);
  std::size_t checked = 0;
  for (const auto& [key, sets] : result) {
    if (sets.n >= 10'000) continue;
    REQUIRE_FALSE(contains(sets.prohibited, s_of(sets.n)));
    REQUIRE(sets.allowed.size() + sets.prohibited.size() == sets.window_hi - sets.window_lo + 1);
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("halve and double edges inherit exactly the target's own prohibitions") {
  // predicted_stopping_time(2n, a) = predicted_stopping_time(n, a) + 1, so along
  // these edges the shifted set coincides with the directly computed one.
  for (unsigned long n = 1; n < 5000; ++n) {
    const auto source = allowed_stopping_times(Natural(n), ceil_log2(Natural(n)) + 60);
    for (const auto& e : neighbors(Natural(n))) {
      if (e.rule != EdgeRule::halve && e.rule != EdgeRule::double_up) continue;
      const auto inherited = inherited_prohibitions(source, e);
      const auto direct = allowed_stopping_times(e.to_n, source.window_hi + e.s_shift);
      REQUIRE(subset(inherited, direct.prohibited));
    }
  }
}

TEST_CASE("odd-step edges can add prohibitions the target's own formula allows") {
  // From 3 (prohibited 13) the relation S(10) = S(3) - 1 rules out 12 at 10,
  // although alpha = 3 gives 3 + ceil_log2(27 * 10) = 12 for 10 directly.
  const auto source = allowed_stopping_times(Natural(3), 30);
  REQUIRE(contains(source.prohibited, 13));
  const PropagationEdge edge{3, 10, -1, EdgeRule::triple_plus_one};
  const auto inherited = inherited_prohibitions(source, edge);
  CHECK(contains(inherited, 12));
  CHECK(contains(allowed_stopping_times(Natural(10), 29).allowed, 12));
  CHECK(s_of(Natural(10)) != 12);

  const auto result = propagate_prohibited({{Natural(3), 30}}, 1);
  CHECK(contains(result.at({Natural(10), 29}).prohibited, 12));
}

TEST_CASE("repeated arrivals union into one entry") {
  // 8 reaches 16 by doubling; 5 reaches 16 by 3n+1. Same window height.
  const auto result = propagate_prohibited({{Natural(8), 40}, {Natural(5), 42}}, 1);
  const auto& at16 = result.at({Natural(16), 41});
  const auto from8 = inherited_prohibitions(allowed_stopping_times(Natural(8), 40), {8, 16, +1, EdgeRule::double_up});
  const auto from5 =
      inherited_prohibitions(allowed_stopping_times(Natural(5), 42), {5, 16, -1, EdgeRule::triple_plus_one});
  CHECK(subset(from8, at16.prohibited));
  CHECK(subset(from5, at16.prohibited));
  CHECK_FALSE(contains(at16.prohibited, 4));
}
