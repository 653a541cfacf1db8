#include "collatz/histogram.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace collatz {

namespace {

bool lower(const Extremum& a, const Extremum& b) { return a.eps < b.eps || (a.eps == b.eps && a.n < b.n); }
bool higher(const Extremum& a, const Extremum& b) { return a.eps > b.eps || (a.eps == b.eps && a.n < b.n); }

void keep_min(std::optional<Extremum>& slot, const Extremum& candidate) {
  if (!slot || lower(candidate, *slot)) slot = candidate;
}

void keep_max(std::optional<Extremum>& slot, const Extremum& candidate) {
  if (!slot || higher(candidate, *slot)) slot = candidate;
}

}  // namespace

ResidueHistogram::ResidueHistogram(HistogramConfig config) : config_(config), counts_(config.bins + 1, 0) {
  if (config.bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  if (!(config.lo < config.hi)) throw std::invalid_argument("histogram bounds must satisfy lo < hi");
}

ResidueHistogram ResidueHistogram::restore(HistogramConfig config, std::vector<std::uint64_t> counts,
                                           std::optional<Extremum> min, std::optional<Extremum> max) {
  ResidueHistogram h(config);
  if (counts.size() != h.counts_.size()) throw std::invalid_argument("histogram count vector has wrong size");
  h.counts_ = std::move(counts);
  h.total_ = std::accumulate(h.counts_.begin(), h.counts_.end(), std::uint64_t{0});
  if ((h.total_ == 0) != (!min && !max) || min.has_value() != max.has_value()) {
    throw std::invalid_argument("histogram extrema inconsistent with counts");
  }
  h.min_ = std::move(min);
  h.max_ = std::move(max);
  return h;
}

std::size_t ResidueHistogram::bin_index(double eps) const noexcept {
  if (!(eps >= config_.lo) || !(eps < config_.hi)) return config_.bins;
  const double scaled = (eps - config_.lo) / (config_.hi - config_.lo) * static_cast<double>(config_.bins);
  const auto i = static_cast<std::size_t>(std::floor(scaled));
  return i < config_.bins ? i : config_.bins - 1;
}

double ResidueHistogram::bin_lo(std::size_t i) const noexcept {
  if (i >= config_.bins) return config_.hi;
  return config_.lo + (config_.hi - config_.lo) * static_cast<double>(i) / static_cast<double>(config_.bins);
}

double ResidueHistogram::bin_hi(std::size_t i) const noexcept {
  if (i >= config_.bins) return INFINITY;
  if (i + 1 == config_.bins) return config_.hi;
  return bin_lo(i + 1);
}

void ResidueHistogram::add(double eps, const Natural& n) {
  ++counts_[bin_index(eps)];
  ++total_;
  const Extremum e{eps, n};
  keep_min(min_, e);
  keep_max(max_, e);
}

void ResidueHistogram::merge(const ResidueHistogram& other) {
  if (!(config_ == other.config_)) throw std::invalid_argument("cannot merge histograms with different configs");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
  if (other.min_) keep_min(min_, *other.min_);
  if (other.max_) keep_max(max_, *other.max_);
}

}  // namespace collatz
