#include "collatz/trajectory.hpp"

#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace collatz {

namespace {

// 3v + 1 stays within 64 bits for every v up to this value.
constexpr std::uint64_t kTripleLimit = (std::numeric_limits<std::uint64_t>::max() - 1) / 3;
// The GMP path hands back to the word path below 2^62 < kTripleLimit, so a
// value never bounces between the two without taking a step.
constexpr std::size_t kWordPathBits = 62;

void require_positive(const Natural& n, const char* what) {
  if (sgn(n) <= 0) throw std::domain_error(std::string(what) + ": n must be >= 1");
}

}  // namespace

NonTermination::NonTermination(Natural start, Natural last_value, std::uint64_t iterations)
    : std::runtime_error("trajectory of " + to_decimal(start) + " did not reach 1 within " +
                         std::to_string(iterations) + " iterations"),
      start_(std::move(start)),
      last_value_(std::move(last_value)),
      iterations_(iterations) {}

std::uint64_t default_max_iterations(const Natural& n) {
  const std::uint64_t bits = bit_length(n);
  return 10 * bits * bits + 1'000'000;
}

Natural collatz_step(const Natural& n) {
  if (cmp(n, 2) < 0) throw std::domain_error("collatz_step: n must be >= 2");
  Natural next;
  if (mpz_even_p(n.get_mpz_t())) {
    mpz_tdiv_q_2exp(next.get_mpz_t(), n.get_mpz_t(), 1);
  } else {
    next = 3 * n + 1;
  }
  return next;
}

// Runs of halvings are applied in one shift; the counts (and the value
// reported on hitting the cap) match step-by-step iteration exactly. Values
// that fit in 64 bits take a machine-word path and move to GMP only while
// they are too large for it.
TrajectoryStats trajectory_stats(const Natural& n, const TrajectoryOptions& options) {
  require_positive(n, "trajectory_stats");
  const std::uint64_t cap = options.max_iterations.value_or(default_max_iterations(n));
  const bool keep = options.keep_odd_terms;

  TrajectoryStats st;
  st.n = n;

  Natural big;
  std::uint64_t small = 0;
  bool word_path = fits_u64(n);
  if (word_path) {
    small = to_u64(n);
  } else {
    big = n;
  }

  for (;;) {
    if (word_path) {
      while (small != 1) {
        if ((small & 1U) == 0) {
          const auto zeros = static_cast<std::uint64_t>(std::countr_zero(small));
          if (st.s + zeros > cap) throw NonTermination(n, from_u64(small >> (cap - st.s)), cap);
          small >>= zeros;
          st.s += zeros;
          st.even_steps += zeros;
        } else {
          if (small > kTripleLimit) {
            big = from_u64(small);
            word_path = false;
            break;
          }
          if (st.s + 1 > cap) throw NonTermination(n, from_u64(small), cap);
          if (keep) st.odd_terms.push_back(from_u64(small));
          small = 3 * small + 1;
          ++st.s;
          ++st.alpha;
        }
      }
      if (word_path) return st;
    } else {
      mpz_ptr v = big.get_mpz_t();
      while (mpz_sizeinbase(v, 2) > kWordPathBits) {
        if (mpz_even_p(v)) {
          const std::uint64_t zeros = mpz_scan1(v, 0);
          if (st.s + zeros > cap) {
            mpz_tdiv_q_2exp(v, v, cap - st.s);
            throw NonTermination(n, big, cap);
          }
          mpz_tdiv_q_2exp(v, v, zeros);
          st.s += zeros;
          st.even_steps += zeros;
        } else {
          if (st.s + 1 > cap) throw NonTermination(n, big, cap);
          if (keep) st.odd_terms.push_back(big);
          mpz_mul_ui(v, v, 3);
          mpz_add_ui(v, v, 1);
          ++st.s;
          ++st.alpha;
        }
      }
      small = to_u64(big);
      word_path = true;
    }
  }
}

std::vector<Natural> trajectory_terms(const Natural& n, std::optional<std::uint64_t> max_iterations) {
  require_positive(n, "trajectory_terms");
  const std::uint64_t cap = max_iterations.value_or(default_max_iterations(n));
  std::vector<Natural> terms{n};
  std::uint64_t steps = 0;
  while (terms.back() != 1) {
    if (steps == cap) throw NonTermination(n, terms.back(), cap);
    terms.push_back(collatz_step(terms.back()));
    ++steps;
  }
  return terms;
}

}  // namespace collatz
