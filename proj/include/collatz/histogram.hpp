#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "collatz/natural.hpp"

namespace collatz {

struct HistogramConfig {
  std::size_t bins = 652;
  double lo = 0.0;
  double hi = 0.326;

  bool operator==(const HistogramConfig&) const = default;
};

/// A residue value together with the n that produced it.
struct Extremum {
  double eps = 0.0;
  Natural n;

  bool operator==(const Extremum&) const = default;
};

/// Fixed-width binned distribution of residues over [lo, hi) plus one
/// overflow bin (index `bins`) for every value outside that interval.
///
/// Merging is commutative and associative: counts add, and extremum ties
/// on eps resolve to the smaller n.
class ResidueHistogram {
 public:
  explicit ResidueHistogram(HistogramConfig config = {});

  /// Rebuilds a histogram from serialized parts; validates sizes and totals.
  static ResidueHistogram restore(HistogramConfig config, std::vector<std::uint64_t> counts,
                                  std::optional<Extremum> min, std::optional<Extremum> max);

  void add(double eps, const Natural& n);
  /// Throws std::invalid_argument when configs differ.
  void merge(const ResidueHistogram& other);

  const HistogramConfig& config() const noexcept { return config_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t overflow() const noexcept { return counts_.back(); }
  std::uint64_t total() const noexcept { return total_; }
  const std::optional<Extremum>& min() const noexcept { return min_; }
  const std::optional<Extremum>& max() const noexcept { return max_; }

  std::size_t bin_index(double eps) const noexcept;
  double bin_lo(std::size_t i) const noexcept;
  double bin_hi(std::size_t i) const noexcept;

  bool operator==(const ResidueHistogram&) const = default;

 private:
  HistogramConfig config_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::optional<Extremum> min_;
  std::optional<Extremum> max_;
};

}  // namespace collatz
