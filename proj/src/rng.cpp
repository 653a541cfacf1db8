#include "collatz/rng.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace collatz {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept {
  for (auto& word : s_) word = splitmix64(seed);
}

Xoshiro256::result_type Xoshiro256::operator()() noexcept {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

void Xoshiro256::jump() noexcept {
  static constexpr std::array<std::uint64_t, 4> kJump = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                                         0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
  std::array<std::uint64_t, 4> acc{};
  for (std::uint64_t word : kJump) {
    for (int b = 0; b < 64; ++b) {
      if (word & (std::uint64_t{1} << b)) {
        for (std::size_t i = 0; i < 4; ++i) acc[i] ^= s_[i];
      }
      (*this)();
    }
  }
  s_ = acc;
}

std::uint64_t Xoshiro256::below(std::uint64_t range) noexcept {
  // Reject the low 2^64 mod range values so the modulo is unbiased.
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t x = (*this)();
    if (x >= threshold) return x % range;
  }
}

Natural sample_natural(Xoshiro256& rng, std::uint64_t max_bits) {
  if (max_bits == 0) throw std::invalid_argument("sample_natural: max_bits must be >= 1");
  const std::uint64_t bits = 1 + rng.below(max_bits);
  const std::uint64_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> limbs(words);
  for (auto& limb : limbs) limb = rng();
  const std::uint64_t top_bits = bits - 64 * (words - 1);
  std::uint64_t& top = limbs.back();
  if (top_bits < 64) top &= (std::uint64_t{1} << top_bits) - 1;
  top |= std::uint64_t{1} << (top_bits - 1);

  Natural out;
  mpz_import(out.get_mpz_t(), limbs.size(), -1, sizeof(std::uint64_t), 0, 0, limbs.data());
  return out;
}

}  // namespace collatz
