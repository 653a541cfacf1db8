#include "collatz/checkpoint.hpp"

#include <json.hpp>

namespace collatz {

using nlohmann::json;

namespace {

json encode_campaign(const Campaign& campaign) {
  if (const auto* range = std::get_if<RangeCampaign>(&campaign)) {
    return {{"kind", "range"}, {"start", to_decimal(range->start)}, {"end", to_decimal(range->end)}};
  }
  const auto& random = std::get<RandomCampaign>(campaign);
  return {{"kind", "random"},
          {"samples", random.samples},
          {"max_bits", random.max_bits},
          {"seed", std::to_string(random.seed)}};
}

Campaign decode_campaign(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "range") {
    return RangeCampaign{parse_natural(j.at("start").get<std::string>()),
                         parse_natural(j.at("end").get<std::string>())};
  }
  if (kind == "random") {
    return RandomCampaign{j.at("samples").get<std::uint64_t>(), j.at("max_bits").get<std::uint64_t>(),
                          std::stoull(j.at("seed").get<std::string>())};
  }
  throw CheckpointError("unknown campaign kind '" + kind + "'");
}

json encode_extremum(const std::optional<Extremum>& e) {
  if (!e) return nullptr;
  return {{"eps", e->eps}, {"n", to_decimal(e->n)}};
}

std::optional<Extremum> decode_extremum(const json& j) {
  if (j.is_null()) return std::nullopt;
  return Extremum{j.at("eps").get<double>(), parse_natural(j.at("n").get<std::string>())};
}

FindingKind decode_kind(const std::string& s) {
  if (s == "formula_violation") return FindingKind::formula_violation;
  if (s == "non_termination") return FindingKind::non_termination;
  throw CheckpointError("unknown finding kind '" + s + "'");
}

template <class F>
auto guarded(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const CheckpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw CheckpointError("malformed checkpoint " + std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string encode_header(const CheckpointHeader& header) {
  const json j = {{"format_version", kCheckpointFormatVersion},
                  {"campaign", encode_campaign(header.campaign)},
                  {"chunk", header.chunk},
                  {"histogram_config",
                   {{"bins", header.histogram.bins}, {"lo", header.histogram.lo}, {"hi", header.histogram.hi}}}};
  return j.dump();
}

CheckpointHeader decode_header(std::string_view line) {
  return guarded("header", [&] {
    const json j = json::parse(line);
    const int version = j.at("format_version").get<int>();
    if (version != kCheckpointFormatVersion) {
      throw CheckpointError("unsupported checkpoint format_version " + std::to_string(version));
    }
    const json& h = j.at("histogram_config");
    return CheckpointHeader{decode_campaign(j.at("campaign")), j.at("chunk").get<std::uint64_t>(),
                            HistogramConfig{h.at("bins").get<std::size_t>(), h.at("lo").get<double>(),
                                            h.at("hi").get<double>()}};
  });
}

std::string encode_chunk(const ChunkResult& chunk) {
  json counts = json::array();
  const auto c = chunk.histogram.counts();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) counts.push_back({i, c[i]});
  }
  json violations = json::array();
  for (const auto& v : chunk.violations) {
    violations.push_back({{"kind", to_string(v.kind)},
                          {"n", to_decimal(v.n)},
                          {"true_s", v.true_s},
                          {"predicted_s", v.predicted_s},
                          {"alpha", v.alpha}});
  }
  const json j = {{"chunk_index", chunk.index},
                  {"checked", chunk.checked},
                  {"counts_delta", std::move(counts)},
                  {"min", encode_extremum(chunk.histogram.min())},
                  {"max", encode_extremum(chunk.histogram.max())},
                  {"violations", std::move(violations)}};
  return j.dump();
}

ChunkResult decode_chunk(std::string_view line, const HistogramConfig& config) {
  return guarded("chunk record", [&] {
    const json j = json::parse(line);
    std::vector<std::uint64_t> counts(config.bins + 1, 0);
    for (const auto& entry : j.at("counts_delta")) {
      const auto bin = entry.at(0).get<std::size_t>();
      if (bin >= counts.size()) throw CheckpointError("histogram bin out of range in checkpoint");
      counts[bin] += entry.at(1).get<std::uint64_t>();
    }
    ChunkResult out;
    out.index = j.at("chunk_index").get<std::uint64_t>();
    out.checked = j.at("checked").get<std::uint64_t>();
    out.histogram =
        ResidueHistogram::restore(config, std::move(counts), decode_extremum(j.at("min")), decode_extremum(j.at("max")));
    for (const auto& v : j.at("violations")) {
      out.violations.push_back(Violation{decode_kind(v.at("kind").get<std::string>()),
                                         parse_natural(v.at("n").get<std::string>()), v.at("true_s").get<std::uint64_t>(),
                                         v.at("predicted_s").get<std::uint64_t>(), v.at("alpha").get<std::uint64_t>()});
    }
    return out;
  });
}

CheckpointContents read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw CheckpointError("checkpoint " + path.string() + " is empty");
  CheckpointContents contents{decode_header(line), {}};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ChunkResult chunk = decode_chunk(line, contents.header.histogram);
    if (chunk.index != contents.chunks.size()) {
      throw CheckpointError("checkpoint chunk records out of order at chunk " + std::to_string(chunk.index));
    }
    contents.chunks.push_back(std::move(chunk));
  }
  return contents;
}

CheckpointWriter CheckpointWriter::create(const std::filesystem::path& path, const CheckpointHeader& header) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw CheckpointError("cannot create checkpoint " + path.string());
  out << encode_header(header) << '\n' << std::flush;
  return CheckpointWriter(std::move(out));
}

CheckpointWriter CheckpointWriter::append_to(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw CheckpointError("cannot append to checkpoint " + path.string());
  return CheckpointWriter(std::move(out));
}

void CheckpointWriter::write(const ChunkResult& chunk) {
  out_ << encode_chunk(chunk) << '\n' << std::flush;
  if (!out_) throw CheckpointError("failed to write checkpoint record");
}

}  // namespace collatz
