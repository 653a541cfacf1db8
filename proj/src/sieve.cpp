#include "collatz/sieve.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>

#include "collatz/formula.hpp"

namespace collatz {

namespace {

using Key = std::pair<Natural, std::uint64_t>;

// Target window [lo, hi] for an edge, or nothing when it is empty.
std::optional<std::pair<std::uint64_t, std::uint64_t>> target_window(const StoppingTimeSets& source,
                                                                     const PropagationEdge& edge) {
  const auto hi = static_cast<std::int64_t>(source.window_hi) + edge.s_shift;
  const std::uint64_t lo = ceil_log2(edge.to_n);
  if (hi < 0 || static_cast<std::uint64_t>(hi) < lo) return std::nullopt;
  return std::pair{lo, static_cast<std::uint64_t>(hi)};
}

void rebuild_allowed(StoppingTimeSets& sets) {
  sets.allowed.clear();
  auto p = sets.prohibited.begin();
  for (std::uint64_t v = sets.window_lo; v <= sets.window_hi; ++v) {
    if (p != sets.prohibited.end() && *p == v) {
      ++p;
    } else {
      sets.allowed.push_back(v);
    }
  }
}

// Returns true when `into` gained values.
bool union_into(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& extra) {
  std::vector<std::uint64_t> merged;
  merged.reserve(into.size() + extra.size());
  std::set_union(into.begin(), into.end(), extra.begin(), extra.end(), std::back_inserter(merged));
  const bool grew = merged.size() != into.size();
  into = std::move(merged);
  return grew;
}

}  // namespace

std::string to_string(EdgeRule rule) {
  switch (rule) {
    case EdgeRule::halve: return "halve";
    case EdgeRule::triple_plus_one: return "triple_plus_one";
    case EdgeRule::double_up: return "double";
    case EdgeRule::inverse_odd: return "inverse_odd";
  }
  return "?";
}

StoppingTimeSets allowed_stopping_times(const Natural& n, std::uint64_t bound) {
  if (sgn(n) <= 0) throw std::domain_error("allowed_stopping_times: n must be >= 1");
  StoppingTimeSets out;
  out.n = n;
  out.window_lo = ceil_log2(n);
  out.window_hi = bound;
  if (bound < out.window_lo) throw std::invalid_argument("allowed_stopping_times: bound is below ceil(log2 n)");

  PowerOfThreeCache powers;
  for (std::uint64_t alpha = 0;; ++alpha) {
    const std::uint64_t s = predicted_stopping_time(n, alpha, powers);
    if (s > bound) break;
    out.allowed.push_back(s);
  }
  auto a = out.allowed.begin();
  for (std::uint64_t v = out.window_lo; v <= bound; ++v) {
    if (a != out.allowed.end() && *a == v) {
      ++a;
    } else {
      out.prohibited.push_back(v);
    }
  }
  return out;
}

std::vector<PropagationEdge> neighbors(const Natural& n) {
  if (sgn(n) <= 0) throw std::domain_error("neighbors: n must be >= 1");
  std::vector<PropagationEdge> edges;
  const bool even = mpz_even_p(n.get_mpz_t());
  if (even) {
    edges.push_back({n, Natural(n / 2), -1, EdgeRule::halve});
  } else if (n != 1) {
    edges.push_back({n, Natural(3 * n + 1), -1, EdgeRule::triple_plus_one});
  }
  edges.push_back({n, Natural(2 * n), +1, EdgeRule::double_up});
  if (n > 1) {
    const Natural m = n - 1;
    if (mpz_divisible_ui_p(m.get_mpz_t(), 3)) {
      Natural q = m / 3;
      // q = 1 is terminal: S(1) = 0, not S(4) + 1.
      if (mpz_odd_p(q.get_mpz_t()) && q != 1) edges.push_back({n, std::move(q), +1, EdgeRule::inverse_odd});
    }
  }
  return edges;
}

std::vector<std::uint64_t> inherited_prohibitions(const StoppingTimeSets& source, const PropagationEdge& edge) {
  std::vector<std::uint64_t> out;
  const auto window = target_window(source, edge);
  if (!window) return out;
  for (std::uint64_t p : source.prohibited) {
    const auto q = static_cast<std::int64_t>(p) + edge.s_shift;
    if (q < 0) continue;
    const auto shifted = static_cast<std::uint64_t>(q);
    if (shifted >= window->first && shifted <= window->second) out.push_back(shifted);
  }
  return out;
}

SieveResult propagate_prohibited(const std::vector<SieveSeed>& seeds, std::uint64_t depth) {
  SieveResult result;
  std::set<Key> frontier;
  for (const auto& seed : seeds) {
    Key key{seed.n, seed.bound};
    if (!result.contains(key)) result.emplace(key, allowed_stopping_times(seed.n, seed.bound));
    frontier.insert(std::move(key));
  }

  for (std::uint64_t level = 0; level < depth && !frontier.empty(); ++level) {
    std::set<Key> next;
    for (const Key& key : frontier) {
      // Copy: inserting targets may touch this very entry.
      const StoppingTimeSets source = result.at(key);
      for (const PropagationEdge& edge : neighbors(source.n)) {
        const auto window = target_window(source, edge);
        if (!window) continue;
        const std::vector<std::uint64_t> inherited = inherited_prohibitions(source, edge);
        Key target{edge.to_n, window->second};
        auto it = result.find(target);
        if (it == result.end()) {
          StoppingTimeSets sets = allowed_stopping_times(edge.to_n, window->second);
          if (union_into(sets.prohibited, inherited)) rebuild_allowed(sets);
          result.emplace(target, std::move(sets));
          next.insert(std::move(target));
        } else if (union_into(it->second.prohibited, inherited)) {
          rebuild_allowed(it->second);
          next.insert(std::move(target));
        }
      }
    }
    frontier = std::move(next);
  }
  return result;
}

}  // namespace collatz
