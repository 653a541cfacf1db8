#pragma once

// Plot-ready data files and text reports.
//
// Every emitter builds a Table, which is written as CSV (header row, comma
// separated, no quoting needed) or JSONL (one object per row). Column
// schemas:
//   histogram   bin_lo,bin_hi,count
//   scatter     n,s
//   curve       n,s_pred,alpha
//   trajectory  step,term,s,alpha
//   sieve       n,window_lo,window_hi,allowed,prohibited
//   alpha table alpha,size,members
// Sets are semicolon-joined integers. Naturals are decimal strings in both
// formats; in JSONL, natural and set columns are JSON strings and integer
// and real columns are JSON numbers.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collatz/alpha_sequences.hpp"
#include "collatz/formula.hpp"
#include "collatz/histogram.hpp"
#include "collatz/natural.hpp"
#include "collatz/sieve.hpp"
#include "collatz/verifier.hpp"

namespace collatz {

enum class Format { csv, jsonl };

/// "csv" or "jsonl"; throws std::invalid_argument otherwise.
Format parse_format(std::string_view text);
std::string_view extension(Format format);

enum class ColumnKind { natural, integer, real, text };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::text;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<std::string>> rows;

  std::vector<std::string> column_names() const;
};

void write_table(std::ostream& out, const Table& table, Format format);

/// Parses CSV written by write_table. All columns come back as text.
Table read_csv(std::istream& in);

/// Fixed notation with `precision` decimals; "inf" for +infinity.
std::string format_real(double value, int precision);

std::string join_set(std::span<const std::uint64_t> values);
std::vector<std::uint64_t> split_set(std::string_view text);

Table histogram_table(const ResidueHistogram& histogram, int precision = 12);

struct ScatterPoint {
  Natural n;
  std::uint64_t s = 0;
  std::uint64_t alpha = 0;
};

/// (n, S(n), alpha(n)) for n = 1..n_max.
std::vector<ScatterPoint> scatter_points(std::uint64_t n_max, std::optional<std::uint64_t> max_iterations = std::nullopt);
Table scatter_table(std::span<const ScatterPoint> points);
Table curve_table(std::uint64_t alpha, std::span<const CurvePoint> curve);

/// One trajectory term with its own stopping time and odd-term count.
struct TrajectoryRow {
  std::uint64_t step = 0;
  Natural term;
  std::uint64_t s = 0;
  std::uint64_t alpha = 0;
};

std::vector<TrajectoryRow> trajectory_path(const Natural& n, std::optional<std::uint64_t> max_iterations = std::nullopt);
Table trajectory_table(std::span<const TrajectoryRow> rows);

Table sieve_table(std::span<const StoppingTimeSets> entries);
/// Entries in key order.
std::vector<StoppingTimeSets> sieve_entries(const SieveResult& result);

Table alpha_table(const AlphaClassification& classification);

/// Multi-line human-readable summaries.
std::string profile_text(const StoppingProfile& profile, int precision = 12);
std::string report_text(const VerificationReport& report);
/// Single JSON object summarizing a report.
std::string report_json(const VerificationReport& report, int precision = 12);

}  // namespace collatz
