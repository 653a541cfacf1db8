#pragma once

// Brute-force reference computations used by the tests. Everything here
// walks the map one step at a time with plain GMP calls and shares no code
// with the library's batched paths.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace collatz::oracle {

struct Walk {
  std::uint64_t s = 0;
  std::uint64_t alpha = 0;
  std::uint64_t even_steps = 0;
  std::vector<mpz_class> odd_terms;
};

inline Walk walk(mpz_class n) {
  Walk w;
  while (n != 1) {
    if (mpz_odd_p(n.get_mpz_t())) {
      w.odd_terms.push_back(n);
      n = 3 * n + 1;
      ++w.alpha;
    } else {
      n /= 2;
      ++w.even_steps;
    }
    ++w.s;
  }
  return w;
}

inline Walk walk(std::uint64_t n) { return walk(mpz_class(static_cast<unsigned long>(n))); }

/// Smallest c with 2^c >= m, by repeated doubling.
inline std::uint64_t ceil_log2_by_doubling(const mpz_class& m) {
  std::uint64_t c = 0;
  mpz_class p = 1;
  while (p < m) {
    p *= 2;
    ++c;
  }
  return c;
}

inline mpz_class pow_ui(unsigned long base, unsigned long exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

}  // namespace collatz::oracle
