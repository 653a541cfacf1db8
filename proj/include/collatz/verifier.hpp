#pragma once

// Batch verification of the stopping-time formula over exhaustive ranges and
// over seeded random big integers.
//
// A campaign is cut into fixed-size chunks. Chunks are independent; their
// results are reduced in ascending chunk index on the calling thread, so the
// report depends on (campaign, chunk size, histogram config) only and never
// on the worker count. With a checkpoint path set, every reduced chunk is
// appended to a JSONL file and a later call with the same inputs resumes
// from it.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "collatz/histogram.hpp"
#include "collatz/natural.hpp"

namespace collatz {

struct RangeCampaign {
  Natural start;
  Natural end;  // inclusive

  bool operator==(const RangeCampaign&) const = default;
};

struct RandomCampaign {
  std::uint64_t samples = 0;
  std::uint64_t max_bits = 0;
  std::uint64_t seed = 0;

  bool operator==(const RandomCampaign&) const = default;
};

using Campaign = std::variant<RangeCampaign, RandomCampaign>;

/// Number of values a campaign checks when run to completion.
Natural campaign_size(const Campaign& campaign);

enum class FindingKind { formula_violation, non_termination };

struct Violation {
  FindingKind kind = FindingKind::formula_violation;
  Natural n;
  /// Stopping time; for non_termination, the iteration cap that was hit.
  std::uint64_t true_s = 0;
  /// Zero for non_termination.
  std::uint64_t predicted_s = 0;
  std::uint64_t alpha = 0;

  bool operator==(const Violation&) const = default;
};

struct VerifyOptions {
  std::uint64_t chunk = 65536;
  unsigned workers = 1;
  HistogramConfig histogram;
  /// Stop after the first chunk that contains a finding.
  bool fail_fast = false;
  /// Uniform iteration cap; per-n default_max_iterations when unset.
  std::optional<std::uint64_t> max_iterations;
  std::optional<std::filesystem::path> checkpoint;
  /// Stop after this many chunks have been reduced in this call (counts
  /// chunks restored from a checkpoint too). Used to interrupt campaigns.
  std::optional<std::uint64_t> stop_after_chunks;
};

/// Work and findings of one chunk.
struct ChunkResult {
  std::uint64_t index = 0;
  std::uint64_t checked = 0;
  ResidueHistogram histogram;
  std::vector<Violation> violations;
};

struct VerificationReport {
  Campaign campaign;
  std::uint64_t chunk = 0;
  std::uint64_t chunks_total = 0;
  std::uint64_t chunks_completed = 0;
  std::uint64_t checked = 0;
  std::vector<Violation> violations;
  ResidueHistogram histogram;
  /// Seconds spent in this call; excluded from equality.
  double wall_time = 0.0;

  bool complete() const noexcept { return chunks_completed == chunks_total; }
  bool operator==(const VerificationReport& other) const;
};

/// Checks one chunk of a campaign. Exposed for tests and tooling.
ChunkResult run_chunk(const Campaign& campaign, std::uint64_t chunk_index, const VerifyOptions& options);

VerificationReport verify(const Campaign& campaign, const VerifyOptions& options = {});

/// Requires 1 <= start <= end.
VerificationReport verify_range(const Natural& start, const Natural& end, const VerifyOptions& options = {});

/// Requires samples >= 1 and max_bits >= 1.
VerificationReport verify_random(std::uint64_t samples, std::uint64_t max_bits, std::uint64_t seed,
                                 const VerifyOptions& options = {});

std::string to_string(FindingKind kind);

}  // namespace collatz
