#pragma once

// Collatz trajectories and their basic counts.
//
// Stopping time here is the total number of map applications needed to reach
// 1 (n = 1 has stopping time 0). alpha counts the odd values visited before
// the terminal 1, including the start value when it is odd and not 1.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "collatz/natural.hpp"

namespace collatz {

/// Raised when a trajectory has not reached 1 within the iteration cap.
class NonTermination : public std::runtime_error {
 public:
  NonTermination(Natural start, Natural last_value, std::uint64_t iterations);

  const Natural& start() const noexcept { return start_; }
  const Natural& last_value() const noexcept { return last_value_; }
  std::uint64_t iterations() const noexcept { return iterations_; }

 private:
  Natural start_;
  Natural last_value_;
  std::uint64_t iterations_;
};

/// 10 * bitlen(n)^2 + 10^6.
std::uint64_t default_max_iterations(const Natural& n);

struct TrajectoryOptions {
  /// Cap on map applications; default_max_iterations(n) when unset.
  std::optional<std::uint64_t> max_iterations;
  /// Statistics-only mode drops odd_terms.
  bool keep_odd_terms = true;
};

struct TrajectoryStats {
  Natural n;
  std::uint64_t s = 0;
  std::uint64_t alpha = 0;
  std::uint64_t even_steps = 0;
  /// Odd values in trajectory order, excluding the terminal 1. Empty when
  /// keep_odd_terms was off.
  std::vector<Natural> odd_terms;
};

/// One application of the map. Requires n >= 2.
Natural collatz_step(const Natural& n);

/// Requires n >= 1. Throws NonTermination when the cap is hit.
TrajectoryStats trajectory_stats(const Natural& n, const TrajectoryOptions& options = {});

/// The full sequence n, step(n), ..., 1. Requires n >= 1.
std::vector<Natural> trajectory_terms(const Natural& n,
                                      std::optional<std::uint64_t> max_iterations = std::nullopt);

}  // namespace collatz
