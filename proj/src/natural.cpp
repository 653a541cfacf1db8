#include "collatz/natural.hpp"

#include <stdexcept>
#include <string>

namespace collatz {

static_assert(sizeof(unsigned long) == 8, "LP64 platform expected for mpz <-> uint64 conversion");

std::uint64_t bit_length(const Natural& m) {
  if (sgn(m) == 0) return 0;
  return mpz_sizeinbase(m.get_mpz_t(), 2);
}

std::uint64_t to_u64(const Natural& m) { return mpz_get_ui(m.get_mpz_t()); }

bool is_power_of_two(const Natural& m) {
  if (sgn(m) <= 0) return false;
  return mpz_scan1(m.get_mpz_t(), 0) + 1 == bit_length(m);
}

Natural parse_natural(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty natural number");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a decimal natural number: '" + std::string(text) + "'");
    }
  }
  return Natural(std::string(text), 10);
}

}  // namespace collatz
