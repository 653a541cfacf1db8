#include "collatz/verifier.hpp"

#include <chrono>
#include <stdexcept>

#include "collatz/checkpoint.hpp"
#include "collatz/formula.hpp"
#include "collatz/parallel.hpp"
#include "collatz/rng.hpp"
#include "collatz/trajectory.hpp"

namespace collatz {

namespace {

// Per-worker evaluation state.
class Checker {
 public:
  Checker(const VerifyOptions& options, ChunkResult& out) : options_(options), out_(out) {}

  void check(const Natural& n) {
    ++out_.checked;
    TrajectoryStats stats;
    try {
      stats = trajectory_stats(n, {options_.max_iterations, false});
    } catch (const NonTermination& e) {
      out_.violations.push_back({FindingKind::non_termination, n, e.iterations(), 0, 0});
      return;
    }
    const FormulaVerdict verdict = check_formula(n, stats, powers_);
    if (!verdict) {
      out_.violations.push_back({FindingKind::formula_violation, n, verdict.true_s, verdict.predicted_s, stats.alpha});
    }
    out_.histogram.add(residue(n, stats, powers_), n);
  }

 private:
  const VerifyOptions& options_;
  ChunkResult& out_;
  PowerOfThreeCache powers_;
};

void validate(const Campaign& campaign, const VerifyOptions& options) {
  if (options.chunk == 0) throw std::invalid_argument("chunk size must be >= 1");
  if (const auto* range = std::get_if<RangeCampaign>(&campaign)) {
    if (range->start < 1) throw std::invalid_argument("range start must be >= 1");
    if (range->end < range->start) throw std::invalid_argument("range end must be >= start");
  } else {
    const auto& random = std::get<RandomCampaign>(campaign);
    if (random.samples == 0) throw std::invalid_argument("sample count must be >= 1");
    if (random.max_bits == 0) throw std::invalid_argument("max_bits must be >= 1");
  }
}

std::uint64_t chunk_count(const Campaign& campaign, std::uint64_t chunk) {
  const Natural size = campaign_size(campaign);
  const Natural chunks = (size + (chunk - 1)) / from_u64(chunk);
  if (!fits_u64(chunks)) throw std::invalid_argument("campaign has too many chunks");
  return to_u64(chunks);
}

void absorb(VerificationReport& report, ChunkResult&& chunk) {
  report.checked += chunk.checked;
  report.histogram.merge(chunk.histogram);
  for (auto& v : chunk.violations) report.violations.push_back(std::move(v));
  ++report.chunks_completed;
}

}  // namespace

Natural campaign_size(const Campaign& campaign) {
  if (const auto* range = std::get_if<RangeCampaign>(&campaign)) return range->end - range->start + 1;
  return from_u64(std::get<RandomCampaign>(campaign).samples);
}

std::string to_string(FindingKind kind) {
  return kind == FindingKind::formula_violation ? "formula_violation" : "non_termination";
}

bool VerificationReport::operator==(const VerificationReport& other) const {
  return campaign == other.campaign && chunk == other.chunk && chunks_total == other.chunks_total &&
         chunks_completed == other.chunks_completed && checked == other.checked &&
         violations == other.violations && histogram == other.histogram;
}

ChunkResult run_chunk(const Campaign& campaign, std::uint64_t chunk_index, const VerifyOptions& options) {
  ChunkResult out{chunk_index, 0, ResidueHistogram(options.histogram), {}};
  Checker checker(options, out);

  if (const auto* range = std::get_if<RangeCampaign>(&campaign)) {
    const Natural lo = range->start + from_u64(chunk_index) * from_u64(options.chunk);
    Natural hi = lo + from_u64(options.chunk - 1);
    if (hi > range->end) hi = range->end;
    if (fits_u64(hi)) {
      const std::uint64_t last = to_u64(hi);
      for (std::uint64_t n = to_u64(lo);; ++n) {
        checker.check(from_u64(n));
        if (n == last) break;
      }
    } else {
      for (Natural n = lo; n <= hi; ++n) checker.check(n);
    }
    return out;
  }

  const auto& random = std::get<RandomCampaign>(campaign);
  Xoshiro256 rng(random.seed);
  for (std::uint64_t j = 0; j < chunk_index; ++j) rng.jump();
  const std::uint64_t first = chunk_index * options.chunk;
  const std::uint64_t last = std::min(random.samples, first + options.chunk);
  for (std::uint64_t i = first; i < last; ++i) checker.check(sample_natural(rng, random.max_bits));
  return out;
}

VerificationReport verify(const Campaign& campaign, const VerifyOptions& options) {
  validate(campaign, options);
  const auto started = std::chrono::steady_clock::now();

  VerificationReport report{campaign, options.chunk, chunk_count(campaign, options.chunk), 0, 0, {},
                            ResidueHistogram(options.histogram), 0.0};
  const CheckpointHeader header{campaign, options.chunk, options.histogram};

  bool stopped = false;
  auto reached_stop = [&](const VerificationReport& r, bool chunk_had_findings) {
    if (options.fail_fast && chunk_had_findings) return true;
    return options.stop_after_chunks && r.chunks_completed >= *options.stop_after_chunks;
  };

  std::optional<CheckpointWriter> writer;
  if (options.checkpoint) {
    const auto& path = *options.checkpoint;
    if (std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) {
      CheckpointContents restored = read_checkpoint(path);
      if (!(restored.header == header)) {
        throw CheckpointError("checkpoint " + path.string() + " belongs to a different campaign");
      }
      if (restored.chunks.size() > report.chunks_total) {
        throw CheckpointError("checkpoint " + path.string() + " has more chunks than the campaign");
      }
      for (auto& chunk : restored.chunks) {
        const bool findings = !chunk.violations.empty();
        absorb(report, std::move(chunk));
        if (reached_stop(report, findings)) {
          stopped = true;
          break;
        }
      }
      writer = CheckpointWriter::append_to(path);
    } else {
      writer = CheckpointWriter::create(path, header);
    }
  }

  if (!stopped) {
    ordered_parallel_for<ChunkResult>(
        report.chunks_completed, report.chunks_total, options.workers,
        [&](std::uint64_t index) { return run_chunk(campaign, index, options); },
        [&](std::uint64_t, ChunkResult&& chunk) {
          if (writer) writer->write(chunk);
          const bool findings = !chunk.violations.empty();
          absorb(report, std::move(chunk));
          return !reached_stop(report, findings);
        });
  }

  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

VerificationReport verify_range(const Natural& start, const Natural& end, const VerifyOptions& options) {
  return verify(RangeCampaign{start, end}, options);
}

VerificationReport verify_random(std::uint64_t samples, std::uint64_t max_bits, std::uint64_t seed,
                                 const VerifyOptions& options) {
  return verify(RandomCampaign{samples, max_bits, seed}, options);
}

}  // namespace collatz
