#include "collatz/emit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "collatz/trajectory.hpp"

namespace collatz {

namespace {

std::string u64(std::uint64_t v) { return std::to_string(v); }

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string::size_type begin = 0;
  for (;;) {
    const auto comma = line.find(',', begin);
    cells.push_back(line.substr(begin, comma - begin));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return cells;
}

nlohmann::json extremum_json(const std::optional<Extremum>& e, int precision) {
  if (!e) return nullptr;
  return {{"eps", format_real(e->eps, precision)}, {"n", to_decimal(e->n)}};
}

// Long naturals are shortened to their leading digits in text reports.
std::string brief(const Natural& n) {
  std::string digits = to_decimal(n);
  if (digits.size() <= 40) return digits;
  return digits.substr(0, 20) + "... (" + std::to_string(digits.size()) + " digits)";
}

std::string campaign_text(const Campaign& campaign) {
  if (const auto* r = std::get_if<RangeCampaign>(&campaign)) {
    return "range [" + to_decimal(r->start) + ", " + to_decimal(r->end) + "]";
  }
  const auto& r = std::get<RandomCampaign>(campaign);
  return "random samples=" + u64(r.samples) + " max_bits=" + u64(r.max_bits) + " seed=" + u64(r.seed);
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::csv;
  if (text == "jsonl") return Format::jsonl;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (expected csv or jsonl)");
}

std::string_view extension(Format format) { return format == Format::csv ? ".csv" : ".jsonl"; }

std::vector<std::string> Table::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns.size());
  for (const auto& c : columns) names.push_back(c.name);
  return names;
}

void write_table(std::ostream& out, const Table& table, Format format) {
  if (format == Format::csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i].name;
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
    return;
  }
  for (const auto& row : table.rows) {
    out << '{';
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Column& col = table.columns[i];
      out << (i ? "," : "") << nlohmann::json(col.name).dump() << ':';
      const bool numeric = (col.kind == ColumnKind::integer || col.kind == ColumnKind::real) && row[i] != "inf";
      out << (numeric ? row[i] : nlohmann::json(row[i]).dump());
    }
    out << "}\n";
  }
}

Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("CSV input is empty");
  for (auto& name : split_line(line)) table.columns.push_back({std::move(name), ColumnKind::text});
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != table.columns.size()) throw std::invalid_argument("CSV row has wrong number of cells");
    table.rows.push_back(std::move(cells));
  }
  return table;
}

std::string format_real(double value, int precision) {
  if (std::isinf(value) && value > 0) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

std::string join_set(std::span<const std::uint64_t> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += u64(values[i]);
  }
  return out;
}

std::vector<std::uint64_t> split_set(std::string_view text) {
  std::vector<std::uint64_t> out;
  while (!text.empty()) {
    const auto semi = text.find(';');
    const std::string_view item = text.substr(0, semi);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument("bad set element '" + std::string(item) + "'");
    }
    out.push_back(v);
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return out;
}

Table histogram_table(const ResidueHistogram& histogram, int precision) {
  Table t{{{"bin_lo", ColumnKind::real}, {"bin_hi", ColumnKind::real}, {"count", ColumnKind::integer}}, {}};
  const auto counts = histogram.counts();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    t.rows.push_back({format_real(histogram.bin_lo(i), precision), format_real(histogram.bin_hi(i), precision),
                      u64(counts[i])});
  }
  return t;
}

std::vector<ScatterPoint> scatter_points(std::uint64_t n_max, std::optional<std::uint64_t> max_iterations) {
  std::vector<ScatterPoint> points;
  points.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const Natural value = from_u64(n);
    const TrajectoryStats st = trajectory_stats(value, {max_iterations, false});
    points.push_back({value, st.s, st.alpha});
  }
  return points;
}

Table scatter_table(std::span<const ScatterPoint> points) {
  Table t{{{"n", ColumnKind::natural}, {"s", ColumnKind::integer}}, {}};
  for (const auto& p : points) t.rows.push_back({to_decimal(p.n), u64(p.s)});
  return t;
}

Table curve_table(std::uint64_t alpha, std::span<const CurvePoint> curve) {
  Table t{{{"n", ColumnKind::natural}, {"s_pred", ColumnKind::integer}, {"alpha", ColumnKind::integer}}, {}};
  for (const auto& p : curve) t.rows.push_back({to_decimal(p.n), u64(p.s_pred), u64(alpha)});
  return t;
}

std::vector<TrajectoryRow> trajectory_path(const Natural& n, std::optional<std::uint64_t> max_iterations) {
  std::vector<Natural> terms = trajectory_terms(n, max_iterations);
  const std::uint64_t total_s = terms.size() - 1;
  std::uint64_t remaining_alpha = 0;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    if (mpz_odd_p(terms[i].get_mpz_t())) ++remaining_alpha;
  }
  std::vector<TrajectoryRow> rows;
  rows.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const bool odd_step = i + 1 < terms.size() && mpz_odd_p(terms[i].get_mpz_t());
    rows.push_back({i, std::move(terms[i]), total_s - i, remaining_alpha});
    if (odd_step) --remaining_alpha;
  }
  return rows;
}

Table trajectory_table(std::span<const TrajectoryRow> rows) {
  Table t{{{"step", ColumnKind::integer},
           {"term", ColumnKind::natural},
           {"s", ColumnKind::integer},
           {"alpha", ColumnKind::integer}},
          {}};
  for (const auto& r : rows) t.rows.push_back({u64(r.step), to_decimal(r.term), u64(r.s), u64(r.alpha)});
  return t;
}

Table sieve_table(std::span<const StoppingTimeSets> entries) {
  Table t{{{"n", ColumnKind::natural},
           {"window_lo", ColumnKind::integer},
           {"window_hi", ColumnKind::integer},
           {"allowed", ColumnKind::text},
           {"prohibited", ColumnKind::text}},
          {}};
  for (const auto& e : entries) {
    t.rows.push_back(
        {to_decimal(e.n), u64(e.window_lo), u64(e.window_hi), join_set(e.allowed), join_set(e.prohibited)});
  }
  return t;
}

std::vector<StoppingTimeSets> sieve_entries(const SieveResult& result) {
  std::vector<StoppingTimeSets> out;
  out.reserve(result.size());
  for (const auto& [key, sets] : result) out.push_back(sets);
  return out;
}

Table alpha_table(const AlphaClassification& classification) {
  Table t{{{"alpha", ColumnKind::integer}, {"size", ColumnKind::integer}, {"members", ColumnKind::text}}, {}};
  for (const auto& cls : classification.classes) {
    std::string members;
    for (std::size_t i = 0; i < cls.members.size(); ++i) {
      if (i) members += ';';
      members += to_decimal(cls.members[i]);
    }
    t.rows.push_back({u64(cls.alpha), u64(cls.size), std::move(members)});
  }
  return t;
}

std::string profile_text(const StoppingProfile& p, int precision) {
  std::ostringstream out;
  out << "n:          " << to_decimal(p.n) << '\n'
      << "S:          " << p.s << '\n'
      << "alpha:      " << p.alpha << '\n'
      << "even_steps: " << p.even_steps << '\n'
      << "predicted:  " << p.verdict.predicted_s << '\n'
      << "epsilon:    " << format_real(p.residue, precision) << '\n'
      << "verdict:    " << (p.verdict.holds ? "holds" : "VIOLATED") << '\n';
  return out.str();
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream out;
  out << "campaign:   " << campaign_text(r.campaign) << '\n'
      << "chunks:     " << r.chunks_completed << " / " << r.chunks_total << (r.complete() ? "" : " (incomplete)")
      << '\n'
      << "checked:    " << r.checked << '\n'
      << "violations: " << r.violations.size() << '\n';
  for (const auto& v : r.violations) {
    out << "  " << to_string(v.kind) << " n=" << brief(v.n) << " S=" << v.true_s
        << " predicted=" << v.predicted_s << " alpha=" << v.alpha << '\n';
  }
  const auto& h = r.histogram;
  if (h.min()) out << "min eps:    " << format_real(h.min()->eps, 6) << " (n=" << brief(h.min()->n) << ")\n";
  if (h.max()) out << "max eps:    " << format_real(h.max()->eps, 6) << " (n=" << brief(h.max()->n) << ")\n";
  out << "overflow:   " << h.overflow() << " (eps outside [" << h.config().lo << ", " << h.config().hi << "))\n"
      << "wall time:  " << format_real(r.wall_time, 3) << " s\n";
  return out.str();
}

std::string report_json(const VerificationReport& r, int precision) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"kind", to_string(v.kind)},
                          {"n", to_decimal(v.n)},
                          {"true_s", v.true_s},
                          {"predicted_s", v.predicted_s},
                          {"alpha", v.alpha}});
  }
  nlohmann::json campaign;
  if (const auto* range = std::get_if<RangeCampaign>(&r.campaign)) {
    campaign = {{"kind", "range"}, {"start", to_decimal(range->start)}, {"end", to_decimal(range->end)}};
  } else {
    const auto& random = std::get<RandomCampaign>(r.campaign);
    campaign = {{"kind", "random"},
                {"samples", random.samples},
                {"max_bits", random.max_bits},
                {"seed", std::to_string(random.seed)}};
  }
  const nlohmann::json j = {{"campaign", campaign},
                            {"chunk", r.chunk},
                            {"chunks_total", r.chunks_total},
                            {"chunks_completed", r.chunks_completed},
                            {"checked", r.checked},
                            {"violations", violations},
                            {"histogram_total", r.histogram.total()},
                            {"overflow", r.histogram.overflow()},
                            {"min", extremum_json(r.histogram.min(), precision)},
                            {"max", extremum_json(r.histogram.max(), precision)},
                            {"wall_time", r.wall_time}};
  return j.dump();
}

}  // namespace collatz
