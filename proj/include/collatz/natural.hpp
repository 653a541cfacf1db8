#pragma once

// Arbitrary-precision naturals. GMP's mpz_class carries the arithmetic;
// this header adds the handful of conversions the rest of the library needs.

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace collatz {

using Natural = mpz_class;

/// Number of binary digits. bit_length(0) == 0, bit_length(1) == 1.
std::uint64_t bit_length(const Natural& m);

inline bool fits_u64(const Natural& m) { return sgn(m) >= 0 && bit_length(m) <= 64; }

/// Caller must check fits_u64 first.
std::uint64_t to_u64(const Natural& m);

inline Natural from_u64(std::uint64_t v) { return Natural(static_cast<unsigned long>(v)); }

bool is_power_of_two(const Natural& m);

/// Accepts plain decimal digits only (no sign, no whitespace, no prefix).
/// Throws std::invalid_argument otherwise.
Natural parse_natural(std::string_view text);

inline std::string to_decimal(const Natural& m) { return m.get_str(10); }

}  // namespace collatz
