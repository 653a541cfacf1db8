// Command-line front end: stopping-time profiles, verification campaigns,
// and the data files behind every table and figure.
//
// Exit codes: 0 success, 1 usage or runtime error, 2 formula violation found.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "collatz/alpha_sequences.hpp"
#include "collatz/checkpoint.hpp"
#include "collatz/emit.hpp"
#include "collatz/formula.hpp"
#include "collatz/sieve.hpp"
#include "collatz/trajectory.hpp"
#include "collatz/verifier.hpp"

namespace {

using namespace collatz;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

struct GlobalFlags {
  std::optional<std::uint64_t> max_iterations;
  std::string format = "csv";
  std::string output;
  int precision = 12;
};

struct CampaignFlags {
  std::string start = "1";
  std::string end;
  std::uint64_t samples = 100;
  std::uint64_t max_bits = 16384;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::uint64_t chunk = 65536;
  std::size_t bins = 652;
  std::string checkpoint;
  std::optional<std::uint64_t> stop_after;
  bool fail_fast = false;
  std::string histogram_out;
  std::string report_out;
};

// Writes to `path`, or stdout when empty.
template <class F>
void with_output(const std::string& path, F&& f) {
  if (path.empty()) {
    f(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  f(out);
}

void add_campaign_options(CLI::App* cmd, CampaignFlags& c) {
  cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--chunk", c.chunk, "Values per chunk")->check(CLI::PositiveNumber);
  cmd->add_option("--bins", c.bins, "Histogram bins over [0, 0.326)")->check(CLI::PositiveNumber);
  cmd->add_option("--checkpoint", c.checkpoint, "JSONL checkpoint file (created or resumed)");
  cmd->add_option("--stop-after", c.stop_after, "Stop after this many chunks (resume later from the checkpoint)");
  cmd->add_flag("--fail-fast", c.fail_fast, "Stop at the first chunk with a finding");
  cmd->add_option("--histogram-out", c.histogram_out, "Write the residue histogram here");
  cmd->add_option("--report-out", c.report_out, "Write a JSON summary here");
}

int run_campaign(const Campaign& campaign, const CampaignFlags& c, const GlobalFlags& g) {
  VerifyOptions options;
  options.chunk = c.chunk;
  options.workers = c.workers;
  options.histogram.bins = c.bins;
  options.fail_fast = c.fail_fast;
  options.max_iterations = g.max_iterations;
  options.stop_after_chunks = c.stop_after;
  if (!c.checkpoint.empty()) options.checkpoint = c.checkpoint;

  const VerificationReport report = verify(campaign, options);
  std::cout << report_text(report);
  if (!c.histogram_out.empty()) {
    with_output(c.histogram_out, [&](std::ostream& out) {
      write_table(out, histogram_table(report.histogram, g.precision), parse_format(g.format));
    });
  }
  if (!c.report_out.empty()) {
    with_output(c.report_out, [&](std::ostream& out) { out << report_json(report, g.precision) << '\n'; });
  }
  return report.violations.empty() ? kExitOk : kExitViolation;
}

SieveSeed parse_seed(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("sieve seed must look like N:BOUND, got '" + text + "'");
  return {parse_natural(text.substr(0, colon)), to_u64(parse_natural(text.substr(colon + 1)))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collatz stopping-time toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--max-iterations", g.max_iterations, "Divergence guard (default 10*bitlen(n)^2 + 10^6)");
  app.add_option("--format", g.format, "Data file format: csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("-o,--output", g.output, "Output file (default stdout)");
  app.add_option("--precision", g.precision, "Decimal places for residues")->check(CLI::Range(0, 30));

  std::string n_text;
  auto* profile = app.add_subcommand("profile", "S, alpha, even steps, residue and formula verdict for one n");
  profile->add_option("n", n_text, "Start value")->required();

  CampaignFlags campaign;
  auto* verify_range_cmd = app.add_subcommand("verify-range", "Check the formula for every n in [start, end]");
  verify_range_cmd->add_option("--start", campaign.start, "First value (default 1)");
  verify_range_cmd->add_option("--end", campaign.end, "Last value, inclusive")->required();
  add_campaign_options(verify_range_cmd, campaign);

  auto* verify_random_cmd = app.add_subcommand("verify-random", "Check the formula for seeded random big integers");
  verify_random_cmd->add_option("--samples", campaign.samples, "Sample count")->check(CLI::PositiveNumber);
  verify_random_cmd->add_option("--max-bits", campaign.max_bits, "Largest bit length")->check(CLI::PositiveNumber);
  verify_random_cmd->add_option("--seed", campaign.seed, "PRNG seed");
  add_campaign_options(verify_random_cmd, campaign);

  std::uint64_t n_max = 2000;
  std::uint64_t alpha_max = 19;
  std::string out_dir = ".";
  auto* scatter = app.add_subcommand("scatter", "S(n) points and constant-alpha curves");
  scatter->add_option("--n-max", n_max, "Largest n")->check(CLI::PositiveNumber);
  scatter->add_option("--alpha-max", alpha_max, "Largest alpha curve");
  scatter->add_option("--out-dir", out_dir, "Directory for scatter and curve_alpha_<k> files");

  auto* trajectory = app.add_subcommand("trajectory", "Path of n through the S(n) plane");
  trajectory->add_option("n", n_text, "Start value")->required();

  std::uint64_t bound = 0;
  auto* prohibited = app.add_subcommand("prohibited", "Allowed and prohibited stopping times of n");
  prohibited->add_option("n", n_text, "Start value")->required();
  prohibited->add_option("--bound", bound, "Largest stopping time considered")->required();

  std::vector<std::string> seed_texts;
  std::uint64_t depth = 1;
  auto* sieve = app.add_subcommand("sieve", "Propagate prohibitions from seeds through the step relations");
  sieve->add_option("--seed", seed_texts, "Seed as N:BOUND (repeatable)")->required();
  sieve->add_option("--depth", depth, "Propagation depth");

  std::uint64_t limit = 65536;
  std::optional<std::uint64_t> prefix = 17;
  unsigned class_workers = 1;
  auto* table = app.add_subcommand("alpha-table", "Naturals grouped by odd-term count");
  table->add_option("--limit", limit, "Largest n classified")->check(CLI::PositiveNumber);
  table->add_option("--alpha-max", alpha_max, "Largest alpha listed");
  table->add_option("--prefix", prefix, "Members listed per class (0 = all)");
  table->add_option("--workers", class_workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const Format format = parse_format(g.format);

    if (*profile) {
      const StoppingProfile p = stopping_profile(parse_natural(n_text), g.max_iterations);
      with_output(g.output, [&](std::ostream& out) { out << profile_text(p, g.precision); });
      return p.verdict.holds ? kExitOk : kExitViolation;
    }
    if (*verify_range_cmd) {
      return run_campaign(RangeCampaign{parse_natural(campaign.start), parse_natural(campaign.end)}, campaign, g);
    }
    if (*verify_random_cmd) {
      return run_campaign(RandomCampaign{campaign.samples, campaign.max_bits, campaign.seed}, campaign, g);
    }
    if (*scatter) {
      std::filesystem::create_directories(out_dir);
      const auto dir = std::filesystem::path(out_dir);
      const auto points = scatter_points(n_max, g.max_iterations);
      with_output((dir / ("scatter" + std::string(extension(format)))).string(),
                  [&](std::ostream& out) { write_table(out, scatter_table(points), format); });
      for (std::uint64_t a = 0; a <= alpha_max; ++a) {
        const auto curve = alpha_curve(a, from_u64(n_max));
        const auto name = "curve_alpha_" + std::to_string(a) + std::string(extension(format));
        with_output((dir / name).string(), [&](std::ostream& out) { write_table(out, curve_table(a, curve), format); });
      }
      std::cout << "wrote " << alpha_max + 2 << " files to " << dir.string() << '\n';
      return kExitOk;
    }
    if (*trajectory) {
      const auto rows = trajectory_path(parse_natural(n_text), g.max_iterations);
      with_output(g.output, [&](std::ostream& out) { write_table(out, trajectory_table(rows), format); });
      return kExitOk;
    }
    if (*prohibited) {
      const StoppingTimeSets sets = allowed_stopping_times(parse_natural(n_text), bound);
      with_output(g.output, [&](std::ostream& out) { write_table(out, sieve_table({&sets, 1}), format); });
      return kExitOk;
    }
    if (*sieve) {
      std::vector<SieveSeed> seeds;
      for (const auto& s : seed_texts) seeds.push_back(parse_seed(s));
      const auto entries = sieve_entries(propagate_prohibited(seeds, depth));
      with_output(g.output, [&](std::ostream& out) { write_table(out, sieve_table(entries), format); });
      return kExitOk;
    }
    if (*table) {
      ClassifyOptions options;
      if (prefix && *prefix > 0) options.prefix = prefix;
      options.workers = class_workers;
      options.max_iterations = g.max_iterations;
      const auto classes = classify_range(from_u64(limit), alpha_max, options);
      with_output(g.output, [&](std::ostream& out) { write_table(out, alpha_table(classes), format); });
      std::cerr << "alpha > " << alpha_max << ": " << classes.tail_count << " values\n";
      return classes.findings.empty() ? kExitOk : kExitError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
