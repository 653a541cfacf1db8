#pragma once

// Exact evaluation of S = ceil(log2(6^alpha * n)) and the residue
// eps(n) = S - log2(6^alpha * n).
//
// The verdict path is integer-only: 6^alpha * n = 2^alpha * 3^alpha * n, so
// the predicted stopping time is alpha + ceil_log2(3^alpha * n), and
// ceil_log2(m) = bitlen(m - 1) for m >= 2. Floating point only enters the
// residue, which feeds histograms and the empirical bound check.

#include <cstdint>
#include <vector>

#include "collatz/natural.hpp"
#include "collatz/trajectory.hpp"

namespace collatz {

/// Empirical upper bound on the residue observed for small n.
inline constexpr double kResidueBound = 0.326;

/// Residues this close to kResidueBound are recomputed with a 256-bit
/// mantissa before being returned.
inline constexpr double kResidueRecheckWindow = 1e-6;

/// ceil(log2 m) in integer arithmetic. Requires m >= 1.
std::uint64_t ceil_log2(const Natural& m);

/// Incrementally built table of 3^alpha, private to one worker.
/// Exponents beyond `max_cached` are computed on demand and not stored.
class PowerOfThreeCache {
 public:
  explicit PowerOfThreeCache(std::uint64_t max_cached = 4096);

  /// The returned reference is valid until the next call.
  const Natural& power(std::uint64_t alpha);

 private:
  std::uint64_t max_cached_;
  std::vector<Natural> powers_;
  Natural scratch_;
};

/// alpha + ceil_log2(3^alpha * n). Requires n >= 1.
std::uint64_t predicted_stopping_time(const Natural& n, std::uint64_t alpha);
std::uint64_t predicted_stopping_time(const Natural& n, std::uint64_t alpha, PowerOfThreeCache& powers);

/// Residue from an already computed trajectory, absolute error < 1e-12.
double residue(const Natural& n, const TrajectoryStats& stats);
double residue(const Natural& n, const TrajectoryStats& stats, PowerOfThreeCache& powers);

/// Same quantity evaluated with a 256-bit MPFR mantissa.
double residue_precise(const Natural& n, const TrajectoryStats& stats);

struct FormulaVerdict {
  bool holds = false;
  std::uint64_t true_s = 0;
  std::uint64_t predicted_s = 0;

  explicit operator bool() const noexcept { return holds; }
  bool operator==(const FormulaVerdict&) const = default;
};

FormulaVerdict check_formula(const Natural& n, const TrajectoryStats& stats);
FormulaVerdict check_formula(const Natural& n, const TrajectoryStats& stats, PowerOfThreeCache& powers);

/// Everything the profile command prints for one n.
struct StoppingProfile {
  Natural n;
  std::uint64_t s = 0;
  std::uint64_t alpha = 0;
  std::uint64_t even_steps = 0;
  double residue = 0.0;
  FormulaVerdict verdict;
};

StoppingProfile stopping_profile(const Natural& n, std::optional<std::uint64_t> max_iterations = std::nullopt);

}  // namespace collatz
