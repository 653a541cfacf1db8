#pragma once

// Pinned pseudorandom generator for the random campaigns.
//
// Algorithm: xoshiro256** (Blackman & Vigna, 2018). The 256-bit state is
// filled from the 64-bit seed with four successive splitmix64 outputs.
// jump() advances the stream by 2^128 draws; chunk k of a campaign uses the
// base stream after k jumps, so a sample's value depends only on
// (seed, chunk size, sample index) and not on scheduling.

#include <array>
#include <cstdint>
#include <limits>

#include "collatz/natural.hpp"

namespace collatz {

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;
  void jump() noexcept;

  /// Unbiased draw in [0, range) by rejection. Requires range >= 1.
  std::uint64_t below(std::uint64_t range) noexcept;

  const std::array<std::uint64_t, 4>& state() const noexcept { return s_; }

 private:
  std::array<std::uint64_t, 4> s_;
};

/// The campaign sampling law: bit length L uniform in [1, max_bits], then a
/// uniform L-bit natural with its top bit set. Consumes one draw for L and
/// ceil(L / 64) draws for the limbs, least significant first.
Natural sample_natural(Xoshiro256& rng, std::uint64_t max_bits);

}  // namespace collatz
