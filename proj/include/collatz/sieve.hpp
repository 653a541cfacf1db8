#pragma once

// Allowed and prohibited stopping times.
//
// A stopping time p is allowed for n when p = alpha + ceil_log2(3^alpha * n)
// for some alpha >= 0, and prohibited otherwise. The sets are infinite, so
// every result carries an explicit window [ceil_log2(n), bound].
//
// Prohibitions move between neighbours through the exact relations
//   S(n/2)       = S(n) - 1   (n even)
//   S(3n + 1)    = S(n) - 1   (n odd, n >= 3)
//   S(2n)        = S(n) + 1
//   S((n-1)/3)   = S(n) + 1   ((n-1)/3 an odd natural)
// which hold for every n whose trajectory reaches 1. Propagation relies on
// that assumption.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "collatz/natural.hpp"

namespace collatz {

struct StoppingTimeSets {
  Natural n;
  std::uint64_t window_lo = 0;  // ceil_log2(n)
  std::uint64_t window_hi = 0;  // bound, inclusive
  std::vector<std::uint64_t> allowed;
  std::vector<std::uint64_t> prohibited;

  bool operator==(const StoppingTimeSets&) const = default;
};

/// Requires n >= 1 and bound >= ceil_log2(n).
StoppingTimeSets allowed_stopping_times(const Natural& n, std::uint64_t bound);

enum class EdgeRule { halve, triple_plus_one, double_up, inverse_odd };

struct PropagationEdge {
  Natural from_n;
  Natural to_n;
  int s_shift = 0;
  EdgeRule rule = EdgeRule::halve;

  bool operator==(const PropagationEdge&) const = default;
};

/// Applicable edges from n, in rule order halve/triple_plus_one, double_up,
/// inverse_odd. n = 1 has only the double_up edge, and 4 has no inverse_odd
/// edge since 1 is terminal.
std::vector<PropagationEdge> neighbors(const Natural& n);

struct SieveSeed {
  Natural n;
  std::uint64_t bound = 0;
};

/// Entries are keyed by (n, window_hi): the same n reached through windows
/// of different height is kept as separate entries.
using SieveResult = std::map<std::pair<Natural, std::uint64_t>, StoppingTimeSets>;

/// Breadth-first propagation from the seeds, `depth` levels deep.
///
/// At each level every entry touched on the previous level pushes its
/// prohibited set along each edge: p becomes p + shift at the target, the
/// window becomes [ceil_log2(target), bound + shift], values outside it are
/// dropped, and the result is unioned with the target's own prohibitions in
/// that window. Arrivals at an existing (n, window) entry union into it.
/// Edges whose target window would be empty are skipped.
SieveResult propagate_prohibited(const std::vector<SieveSeed>& seeds, std::uint64_t depth);

/// The part of a propagated set that came from the source, before the union
/// with the target's own prohibitions. Exposed so the two routes can be
/// compared.
std::vector<std::uint64_t> inherited_prohibitions(const StoppingTimeSets& source, const PropagationEdge& edge);

std::string to_string(EdgeRule rule);

}  // namespace collatz
