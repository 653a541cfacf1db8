#include "collatz/formula.hpp"

#include <cmath>
#include <stdexcept>

#include <mpfr.h>

namespace collatz {

namespace {

constexpr mpfr_prec_t kPreciseBits = 256;

// S - alpha - log2(m) with m = 3^alpha * n, from the leading 64 bits of m.
// The integer part of log2(m) is exact, so the error is that of log2l on
// a mantissa in [1, 2).
double residue_from_product(std::uint64_t s, std::uint64_t alpha, const Natural& m) {
  const std::uint64_t bits = bit_length(m);
  std::uint64_t top = 0;
  if (bits > 64) {
    Natural shifted;
    mpz_tdiv_q_2exp(shifted.get_mpz_t(), m.get_mpz_t(), bits - 64);
    top = to_u64(shifted);
  } else {
    top = to_u64(m) << (64 - bits);
  }
  const long double mantissa = std::ldexp(static_cast<long double>(top), -63);
  const auto whole = static_cast<long double>(static_cast<std::int64_t>(s) - static_cast<std::int64_t>(alpha) -
                                              static_cast<std::int64_t>(bits - 1));
  return static_cast<double>(whole - std::log2(mantissa));
}

double residue_from_product_precise(std::uint64_t s, std::uint64_t alpha, const Natural& m) {
  mpfr_t x;
  mpfr_init2(x, kPreciseBits);
  mpfr_set_z(x, m.get_mpz_t(), MPFR_RNDN);
  mpfr_log2(x, x, MPFR_RNDN);
  mpfr_si_sub(x, static_cast<long>(s) - static_cast<long>(alpha), x, MPFR_RNDN);
  const double out = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return out;
}

double checked_residue(std::uint64_t s, std::uint64_t alpha, const Natural& m) {
  const double eps = residue_from_product(s, alpha, m);
  if (std::abs(eps - kResidueBound) < kResidueRecheckWindow) return residue_from_product_precise(s, alpha, m);
  return eps;
}

}  // namespace

std::uint64_t ceil_log2(const Natural& m) {
  if (sgn(m) <= 0) throw std::domain_error("ceil_log2: m must be >= 1");
  // bitlen(m - 1) without the subtraction: it only differs from bitlen(m)
  // when m is a power of two.
  const std::uint64_t bits = bit_length(m);
  return is_power_of_two(m) ? bits - 1 : bits;
}

PowerOfThreeCache::PowerOfThreeCache(std::uint64_t max_cached) : max_cached_(max_cached), powers_{Natural(1)} {}

const Natural& PowerOfThreeCache::power(std::uint64_t alpha) {
  if (alpha > max_cached_) {
    mpz_ui_pow_ui(scratch_.get_mpz_t(), 3, alpha);
    return scratch_;
  }
  while (powers_.size() <= alpha) powers_.push_back(powers_.back() * 3);
  return powers_[alpha];
}

std::uint64_t predicted_stopping_time(const Natural& n, std::uint64_t alpha) {
  PowerOfThreeCache powers(0);
  return predicted_stopping_time(n, alpha, powers);
}

std::uint64_t predicted_stopping_time(const Natural& n, std::uint64_t alpha, PowerOfThreeCache& powers) {
  if (sgn(n) <= 0) throw std::domain_error("predicted_stopping_time: n must be >= 1");
  const Natural m = powers.power(alpha) * n;
  return alpha + ceil_log2(m);
}

double residue(const Natural& n, const TrajectoryStats& stats) {
  PowerOfThreeCache powers(0);
  return residue(n, stats, powers);
}

double residue(const Natural& n, const TrajectoryStats& stats, PowerOfThreeCache& powers) {
  const Natural m = powers.power(stats.alpha) * n;
  return checked_residue(stats.s, stats.alpha, m);
}

double residue_precise(const Natural& n, const TrajectoryStats& stats) {
  Natural m;
  mpz_ui_pow_ui(m.get_mpz_t(), 3, stats.alpha);
  m *= n;
  return residue_from_product_precise(stats.s, stats.alpha, m);
}

FormulaVerdict check_formula(const Natural& n, const TrajectoryStats& stats) {
  PowerOfThreeCache powers(0);
  return check_formula(n, stats, powers);
}

FormulaVerdict check_formula(const Natural& n, const TrajectoryStats& stats, PowerOfThreeCache& powers) {
  const std::uint64_t predicted = predicted_stopping_time(n, stats.alpha, powers);
  return {predicted == stats.s, stats.s, predicted};
}

StoppingProfile stopping_profile(const Natural& n, std::optional<std::uint64_t> max_iterations) {
  const TrajectoryStats stats = trajectory_stats(n, {max_iterations, false});
  PowerOfThreeCache powers(0);
  StoppingProfile p;
  p.n = n;
  p.s = stats.s;
  p.alpha = stats.alpha;
  p.even_steps = stats.even_steps;
  p.verdict = check_formula(n, stats, powers);
  p.residue = residue(n, stats, powers);
  return p;
}

}  // namespace collatz
