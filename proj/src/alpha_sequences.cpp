#include "collatz/alpha_sequences.hpp"

#include <stdexcept>

#include "collatz/formula.hpp"
#include "collatz/parallel.hpp"
#include "collatz/trajectory.hpp"

namespace collatz {

namespace {

struct ClassChunk {
  std::vector<std::vector<std::uint64_t>> members;  // per alpha, capped
  std::vector<std::uint64_t> sizes;
  std::uint64_t tail = 0;
  std::vector<Violation> findings;
};

}  // namespace

AlphaClassification classify_range(const Natural& limit, std::uint64_t alpha_max, const ClassifyOptions& options) {
  if (limit < 1) throw std::invalid_argument("classify_range: limit must be >= 1");
  if (!fits_u64(limit)) throw std::invalid_argument("classify_range: limit must be below 2^64");
  if (options.chunk == 0) throw std::invalid_argument("classify_range: chunk must be >= 1");
  const std::uint64_t last = to_u64(limit);
  const std::uint64_t cap = options.prefix.value_or(UINT64_MAX);
  const std::uint64_t chunks = (last - 1) / options.chunk + 1;

  AlphaClassification out;
  out.limit = limit;
  out.classes.resize(alpha_max + 1);
  for (std::uint64_t a = 0; a <= alpha_max; ++a) out.classes[a].alpha = a;

  auto compute = [&](std::uint64_t index) {
    ClassChunk c;
    c.members.resize(alpha_max + 1);
    c.sizes.assign(alpha_max + 1, 0);
    const std::uint64_t lo = 1 + index * options.chunk;
    const std::uint64_t hi = std::min(last, lo + (options.chunk - 1));
    for (std::uint64_t n = lo;; ++n) {
      const Natural value = from_u64(n);
      try {
        const TrajectoryStats st = trajectory_stats(value, {options.max_iterations, false});
        if (st.alpha > alpha_max) {
          ++c.tail;
        } else {
          ++c.sizes[st.alpha];
          if (c.members[st.alpha].size() < cap) c.members[st.alpha].push_back(n);
        }
      } catch (const NonTermination& e) {
        c.findings.push_back({FindingKind::non_termination, value, e.iterations(), 0, 0});
      }
      if (n == hi) break;
    }
    return c;
  };

  // Chunks arrive in ascending order, so appending keeps every class sorted
  // and the prefix cap keeps the globally smallest members.
  auto consume = [&](std::uint64_t, ClassChunk&& c) {
    for (std::uint64_t a = 0; a <= alpha_max; ++a) {
      AlphaClass& cls = out.classes[a];
      cls.size += c.sizes[a];
      for (std::uint64_t m : c.members[a]) {
        if (cls.members.size() >= cap) break;
        cls.members.push_back(from_u64(m));
      }
    }
    out.tail_count += c.tail;
    for (auto& f : c.findings) out.findings.push_back(std::move(f));
    return true;
  };

  ordered_parallel_for<ClassChunk>(0, chunks, options.workers, compute, consume);
  return out;
}

std::vector<CurvePoint> alpha_curve(std::uint64_t alpha, const Natural& n_max) {
  if (n_max < 1) throw std::invalid_argument("alpha_curve: n_max must be >= 1");
  Natural power;
  mpz_ui_pow_ui(power.get_mpz_t(), 3, alpha);
  std::vector<CurvePoint> curve;
  if (fits_u64(n_max)) curve.reserve(to_u64(n_max));
  Natural product;
  for (Natural n = 1; n <= n_max; ++n) {
    product = power * n;
    curve.push_back({n, alpha + ceil_log2(product)});
  }
  return curve;
}

}  // namespace collatz
