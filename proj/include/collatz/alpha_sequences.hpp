#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "collatz/natural.hpp"
#include "collatz/verifier.hpp"

namespace collatz {

/// All n <= limit whose trajectory has exactly `alpha` odd terms, ascending.
struct AlphaClass {
  std::uint64_t alpha = 0;
  std::vector<Natural> members;
  /// Full class size; larger than members.size() when a prefix cap applied.
  std::uint64_t size = 0;
};

struct AlphaClassification {
  Natural limit;
  std::vector<AlphaClass> classes;  // index == alpha, 0..alpha_max
  /// n <= limit with alpha > alpha_max (counted, not listed).
  std::uint64_t tail_count = 0;
  /// n whose trajectory hit the iteration cap.
  std::vector<Violation> findings;
};

struct ClassifyOptions {
  /// Keep at most this many members per class; sizes stay exact.
  std::optional<std::uint64_t> prefix;
  unsigned workers = 1;
  std::uint64_t chunk = 65536;
  std::optional<std::uint64_t> max_iterations;
};

/// Groups [1, limit] by alpha. Requires 1 <= limit < 2^64.
AlphaClassification classify_range(const Natural& limit, std::uint64_t alpha_max, const ClassifyOptions& options = {});

struct CurvePoint {
  Natural n;
  std::uint64_t s_pred = 0;
};

/// Predicted stopping time with a fixed alpha for n = 1..n_max.
std::vector<CurvePoint> alpha_curve(std::uint64_t alpha, const Natural& n_max);

}  // namespace collatz
