#pragma once

// Line-delimited checkpoint files for verification campaigns.
//
// Line 1 is a header object:
//   {"format_version":1,
//    "campaign":{"kind":"range","start":"1","end":"1000000"}
//             | {"kind":"random","samples":100,"max_bits":16384,"seed":"42"},
//    "chunk":65536,
//    "histogram_config":{"bins":652,"lo":0.0,"hi":0.326}}
// Every further line records one reduced chunk, in ascending chunk order:
//   {"chunk_index":0,"checked":65536,"counts_delta":[[bin,count],...],
//    "min":{"eps":0.0,"n":"1"}|null,"max":{...}|null,
//    "violations":[{"kind":"formula_violation","n":"...","true_s":..,
//                   "predicted_s":..,"alpha":..}]}
// Naturals (and the seed) are decimal strings; residues are JSON doubles in
// shortest round-trip form.

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "collatz/verifier.hpp"

namespace collatz {

inline constexpr int kCheckpointFormatVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckpointHeader {
  Campaign campaign;
  std::uint64_t chunk = 0;
  HistogramConfig histogram;

  bool operator==(const CheckpointHeader&) const = default;
};

std::string encode_header(const CheckpointHeader& header);
std::string encode_chunk(const ChunkResult& chunk);
CheckpointHeader decode_header(std::string_view line);
ChunkResult decode_chunk(std::string_view line, const HistogramConfig& config);

struct CheckpointContents {
  CheckpointHeader header;
  std::vector<ChunkResult> chunks;
};

/// Reads a whole checkpoint. Chunk lines must be numbered 0, 1, 2, ...
CheckpointContents read_checkpoint(const std::filesystem::path& path);

/// Appends one line per chunk and flushes after each.
class CheckpointWriter {
 public:
  /// Starts a new file with `header`.
  static CheckpointWriter create(const std::filesystem::path& path, const CheckpointHeader& header);
  /// Appends to an existing, already validated file.
  static CheckpointWriter append_to(const std::filesystem::path& path);

  void write(const ChunkResult& chunk);

 private:
  explicit CheckpointWriter(std::ofstream out) : out_(std::move(out)) {}
  std::ofstream out_;
};

}  // namespace collatz
