//
// Copyright 2026 The Broadband DP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/time/clock.h"
#include "broadband_dp/accountant.h"
#include "broadband_dp/csv_io.h"
#include "broadband_dp/epsilon.h"
#include "broadband_dp/errorsim.h"
#include "broadband_dp/release.h"
#include "broadband_dp/synth.h"
#include "manifest.h"

namespace broadband_dp {
namespace {

constexpr char kPrivateCountsSuffix[] = ".private_counts.csv";
constexpr size_t kMaxListedZones = 10;

struct SynthOptions {
  int64_t zones = 0;
  std::string households = "50:200000";
  std::string bce = "0.1:0.95";
  std::string services_share = "0.5:0.9";
  uint64_t seed = 0;
  std::string out_counts;
  std::string out_households;
};

struct ReleaseOptionsCli {
  std::string counts;
  std::string households;
  std::string epsilon = "0.1";
  uint64_t seed = 0;
  int64_t k = 0;
  std::string out;
  std::string out_private_counts;
  bool round_counts = false;
  std::string journal;
  std::string budget;
};

struct SimulateOptions {
  std::string release;
  std::string private_counts;
  std::string households;
  std::string epsilon = "0.1";
  int64_t k = kDefaultSimulationIterations;
  uint64_t seed = 0;
  std::string out;
};

struct SummarizeOptions {
  std::string in;
  std::string households;
  std::string thresholds = "0,100,1000,10000,100000";
  std::string out;
};

struct BudgetOptions {
  std::string journal;
  std::string budget;
  std::string charge;
  std::string description = "manual";
  std::string plan_epsilon;
};

struct ReplayOptions {
  std::string manifest;
};

// Shared by every subcommand.
struct Context {
  std::vector<std::string> argv;  // without the program name
  int threads = 1;
  std::ostream& out;
  std::ostream& err;
};

absl::StatusOr<Epsilon> ParsePositiveEpsilon(const std::string& text,
                                             absl::string_view flag) {
  absl::StatusOr<Epsilon> eps = Epsilon::Parse(text);
  if (!eps.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(flag, ": ", eps.status().message()));
  }
  if (!eps->is_positive()) {
    return absl::InvalidArgumentError(absl::StrCat(flag, ": must be positive"));
  }
  return eps;
}

absl::StatusOr<std::vector<HouseholdRecord>> LoadHouseholds(
    const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  return ParseHouseholds(*content, path);
}

absl::StatusOr<HouseholdTable> LoadHouseholdTable(const std::string& path) {
  absl::StatusOr<std::vector<HouseholdRecord>> records = LoadHouseholds(path);
  if (!records.ok()) return records.status();
  absl::StatusOr<HouseholdTable> table = MakeHouseholdTable(*records);
  if (!table.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", table.status().message()));
  }
  return table;
}

// Writes the manifest sidecar of `primary_output`, digesting every input and
// output file.
absl::Status FinishRun(const Context& ctx, const std::string& subcommand,
                       std::map<std::string, std::string> parameters,
                       const std::vector<std::string>& inputs,
                       const std::vector<std::string>& outputs) {
  RunManifest manifest;
  manifest.subcommand = subcommand;
  manifest.argv = ctx.argv;
  manifest.parameters = std::move(parameters);
  for (const std::string& path : inputs) {
    absl::StatusOr<std::string> digest = FileSha256(path);
    if (!digest.ok()) return digest.status();
    manifest.input_digests[path] = *digest;
  }
  for (const std::string& path : outputs) {
    absl::StatusOr<std::string> digest = FileSha256(path);
    if (!digest.ok()) return digest.status();
    manifest.output_digests[path] = *digest;
  }
  const std::string manifest_path = ManifestPathFor(outputs.front());
  absl::Status written = WriteManifest(manifest_path, manifest);
  if (!written.ok()) return written;
  ctx.out << "manifest=" << manifest_path << "\n";
  return absl::OkStatus();
}

absl::Status RunSynth(const Context& ctx, const SynthOptions& opts) {
  SynthSpec spec;
  spec.zone_count = opts.zones;
  spec.seed = opts.seed;
  absl::StatusOr<IntRange> households = ParseIntRange(opts.households);
  if (!households.ok()) return households.status();
  absl::StatusOr<RealRange> bce = ParseRealRange(opts.bce);
  if (!bce.ok()) return bce.status();
  absl::StatusOr<RealRange> share = ParseRealRange(opts.services_share);
  if (!share.ok()) return share.status();
  spec.households = *households;
  spec.true_bce = *bce;
  spec.services_share = *share;

  absl::StatusOr<SyntheticDataset> data = GenerateSynthetic(spec);
  if (!data.ok()) return data.status();
  absl::Status status = WriteFile(opts.out_counts, FormatCounts(data->counts));
  if (!status.ok()) return status;
  status = WriteFile(opts.out_households, FormatHouseholds(data->households));
  if (!status.ok()) return status;
  ctx.out << "zones=" << data->counts.size() << "\n";
  return FinishRun(ctx, "synth",
                   {{"zones", absl::StrCat(opts.zones)},
                    {"households", opts.households},
                    {"bce", opts.bce},
                    {"services_share", opts.services_share},
                    {"seed", absl::StrCat(opts.seed)}},
                   {}, {opts.out_counts, opts.out_households});
}

absl::Status RunRelease(const Context& ctx, const ReleaseOptionsCli& opts) {
  absl::StatusOr<Epsilon> eps = ParsePositiveEpsilon(opts.epsilon, "--epsilon");
  if (!eps.ok()) return eps.status();
  if (opts.k < 0) return absl::InvalidArgumentError("--k must be >= 0");
  const QueryPlan plan = CoverageReleasePlan(*eps);
  absl::StatusOr<Epsilon> total = TotalEpsilon(plan);
  if (!total.ok()) return total.status();

  absl::StatusOr<std::string> counts_text = ReadFile(opts.counts);
  if (!counts_text.ok()) return counts_text.status();
  absl::StatusOr<std::vector<RawZipRecord>> records =
      ParseCounts(*counts_text, opts.counts);
  if (!records.ok()) return records.status();
  absl::StatusOr<HouseholdTable> households =
      LoadHouseholdTable(opts.households);
  if (!households.ok()) return households.status();

  if (!opts.journal.empty()) {
    if (opts.budget.empty()) {
      return absl::InvalidArgumentError("--journal requires --budget");
    }
    absl::StatusOr<Epsilon> budget =
        ParsePositiveEpsilon(opts.budget, "--budget");
    if (!budget.ok()) return budget.status();
    absl::StatusOr<BudgetLedger> ledger = LoadJournal(opts.journal, *budget);
    if (!ledger.ok()) return ledger.status();
    absl::StatusOr<LedgerEntry> entry = ledger->Charge(plan, absl::Now());
    if (!entry.ok()) return entry.status();
    absl::Status appended = AppendToJournal(opts.journal, *entry);
    if (!appended.ok()) return appended;
    ctx.out << "remaining_budget=" << ledger->remaining().ToString() << "\n";
  }

  ReleaseOptions release_options;
  release_options.threads = ctx.threads;
  release_options.round_counts = opts.round_counts;
  absl::StatusOr<std::vector<ReleasedZone>> released = ReleaseDataset(
      *records, *households, *eps, opts.seed, release_options);
  if (!released.ok()) return released.status();

  std::vector<PrivateZipRecord> private_counts;
  private_counts.reserve(released->size());
  std::vector<std::string> missing;
  size_t undefined = 0;
  for (const ReleasedZone& zone : *released) {
    private_counts.push_back(zone.counts);
    if (!zone.coverage.defined()) ++undefined;
    if (!households->contains(zone.counts.zone)) {
      missing.push_back(zone.counts.zone.str());
    }
  }

  std::vector<ErrorReport> errors;
  if (opts.k > 0) {
    SimulationConfig config{opts.k, *eps, opts.seed};
    absl::StatusOr<std::vector<ErrorReport>> reports =
        EstimateDatasetErrorRanges(private_counts, *households, config,
                                   ctx.threads);
    if (!reports.ok()) return reports.status();
    errors = *std::move(reports);
  }
  absl::StatusOr<std::vector<CoverageRow>> rows =
      MakeCoverageRows(*released, errors);
  if (!rows.ok()) return rows.status();

  const std::string private_path =
      opts.out_private_counts.empty()
          ? absl::StrCat(opts.out, kPrivateCountsSuffix)
          : opts.out_private_counts;
  absl::Status status = WriteFile(opts.out, FormatCoverage(*rows));
  if (!status.ok()) return status;
  status = WriteFile(private_path, FormatPrivateCounts(private_counts));
  if (!status.ok()) return status;

  ctx.out << "plan=" << plan.Describe() << "\n";
  ctx.out << "total_epsilon=" << total->ToString() << "\n";
  ctx.out << "zones=" << released->size() << "\n";
  ctx.out << "undefined_zones=" << undefined << "\n";
  if (!missing.empty()) {
    std::vector<std::string> shown(
        missing.begin(),
        missing.begin() + std::min(missing.size(), kMaxListedZones));
    ctx.err << "warning: " << missing.size()
            << " zone(s) have no household count and are released as "
               "undefined: "
            << absl::StrJoin(shown, ",")
            << (missing.size() > shown.size() ? ",..." : "") << "\n";
  }
  return FinishRun(ctx, "release",
                   {{"epsilon", eps->ToString()},
                    {"total_epsilon", total->ToString()},
                    {"seed", absl::StrCat(opts.seed)},
                    {"k", absl::StrCat(opts.k)},
                    {"round_counts", opts.round_counts ? "true" : "false"}},
                   {opts.counts, opts.households}, {opts.out, private_path});
}

absl::Status RunSimulateError(const Context& ctx, const SimulateOptions& opts) {
  absl::StatusOr<Epsilon> eps = ParsePositiveEpsilon(opts.epsilon, "--epsilon");
  if (!eps.ok()) return eps.status();
  absl::StatusOr<Epsilon> expected_total =
      TotalEpsilon(CoverageReleasePlan(*eps));
  if (!expected_total.ok()) return expected_total.status();

  const std::string private_path =
      opts.private_counts.empty()
          ? absl::StrCat(opts.release, kPrivateCountsSuffix)
          : opts.private_counts;
  absl::StatusOr<std::string> release_text = ReadFile(opts.release);
  if (!release_text.ok()) return release_text.status();
  absl::StatusOr<std::vector<CoverageRow>> published =
      ParseCoverage(*release_text, opts.release);
  if (!published.ok()) return published.status();
  absl::StatusOr<std::string> private_text = ReadFile(private_path);
  if (!private_text.ok()) return private_text.status();
  absl::StatusOr<std::vector<PrivateZipRecord>> counts =
      ParsePrivateCounts(*private_text, private_path);
  if (!counts.ok()) return counts.status();
  absl::StatusOr<HouseholdTable> households =
      LoadHouseholdTable(opts.households);
  if (!households.ok()) return households.status();

  if (published->size() != counts->size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        opts.release, " has ", published->size(), " zones but ", private_path,
        " has ", counts->size()));
  }
  // The published coverage is recomputed from the full-precision counts;
  // the file's three-decimal value only serves as a consistency check.
  std::vector<ReleasedZone> released;
  released.reserve(counts->size());
  for (size_t i = 0; i < counts->size(); ++i) {
    const PrivateZipRecord& record = (*counts)[i];
    const CoverageRow& row = (*published)[i];
    if (row.zone != record.zone) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i + 1, ": zone ", row.zone.str(), " in ",
                       opts.release, " but ", record.zone.str(), " in ",
                       private_path));
    }
    if (record.epsilon_total != *expected_total) {
      return absl::InvalidArgumentError(absl::StrCat(
          "zone ", record.zone.str(), " was released at total epsilon ",
          record.epsilon_total.ToString(), ", but --epsilon ",
          eps->ToString(), " implies ", expected_total->ToString()));
    }
    std::optional<int64_t> hh;
    if (auto it = households->find(record.zone); it != households->end()) {
      hh = it->second;
    }
    CoverageEstimate coverage = EstimateCoverage(record, hh);
    auto fixed3 = [](const std::optional<double>& v) {
      return v.has_value() ? absl::StrFormat("%.3f", *v) : std::string();
    };
    if (fixed3(coverage.bce) != fixed3(row.broadband_usage)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "zone ", record.zone.str(), ": broadband_usage '",
          fixed3(row.broadband_usage), "' in ", opts.release,
          " does not match the private counts ('", fixed3(coverage.bce),
          "')"));
    }
    released.push_back(ReleasedZone{record, std::move(coverage)});
  }

  SimulationConfig config{opts.k, *eps, opts.seed};
  absl::StatusOr<std::vector<ErrorReport>> reports =
      EstimateDatasetErrorRanges(*counts, *households, config, ctx.threads);
  if (!reports.ok()) return reports.status();
  absl::StatusOr<std::vector<CoverageRow>> rows =
      MakeCoverageRows(released, *reports);
  if (!rows.ok()) return rows.status();
  absl::Status status = WriteFile(opts.out, FormatCoverage(*rows));
  if (!status.ok()) return status;

  size_t without_stats = 0;
  for (const ErrorReport& r : *reports) {
    if (!r.stats.has_value()) ++without_stats;
  }
  ctx.out << "zones=" << reports->size() << "\n";
  ctx.out << "zones_without_error_estimate=" << without_stats << "\n";
  return FinishRun(ctx, "simulate-error",
                   {{"epsilon", eps->ToString()},
                    {"k", absl::StrCat(opts.k)},
                    {"seed", absl::StrCat(opts.seed)}},
                   {opts.release, private_path, opts.households}, {opts.out});
}

absl::StatusOr<std::vector<int64_t>> ParseThresholds(const std::string& text) {
  std::vector<int64_t> out;
  for (absl::string_view part : absl::StrSplit(text, ',')) {
    int64_t value;
    if (!absl::SimpleAtoi(part, &value)) {
      return absl::InvalidArgumentError(
          absl::StrCat("--thresholds: not an integer: '", part, "'"));
    }
    out.push_back(value);
  }
  return out;
}

absl::Status RunSummarize(const Context& ctx, const SummarizeOptions& opts) {
  absl::StatusOr<std::vector<int64_t>> thresholds =
      ParseThresholds(opts.thresholds);
  if (!thresholds.ok()) return thresholds.status();
  absl::StatusOr<std::string> text = ReadFile(opts.in);
  if (!text.ok()) return text.status();
  absl::StatusOr<std::vector<CoverageRow>> rows = ParseCoverage(*text, opts.in);
  if (!rows.ok()) return rows.status();
  absl::StatusOr<HouseholdTable> households =
      LoadHouseholdTable(opts.households);
  if (!households.ok()) return households.status();

  std::vector<ZoneErrorSample> samples;
  samples.reserve(rows->size());
  for (const CoverageRow& row : *rows) {
    auto it = households->find(row.zone);
    if (it == households->end()) continue;
    ErrorReport report{row.zone};
    if (row.error_mae && row.error_msd && row.error_p95) {
      report.stats = ErrorStats{*row.error_mae, *row.error_msd, *row.error_p95};
    }
    samples.push_back(ZoneErrorSample{std::move(report), it->second});
  }
  absl::StatusOr<std::vector<BucketSummary>> buckets =
      BucketByHouseholds(samples, *thresholds);
  if (!buckets.ok()) return buckets.status();
  absl::Status status = WriteFile(opts.out, FormatBuckets(*buckets));
  if (!status.ok()) return status;
  ctx.out << "buckets=" << buckets->size() << "\n";
  return FinishRun(ctx, "summarize", {{"thresholds", opts.thresholds}},
                   {opts.in, opts.households}, {opts.out});
}

absl::Status RunBudget(const Context& ctx, const BudgetOptions& opts) {
  absl::StatusOr<Epsilon> budget =
      ParsePositiveEpsilon(opts.budget, "--budget");
  if (!budget.ok()) return budget.status();
  absl::StatusOr<BudgetLedger> ledger = LoadJournal(opts.journal, *budget);
  if (!ledger.ok()) return ledger.status();

  std::optional<absl::StatusOr<LedgerEntry>> charged;
  if (!opts.charge.empty()) {
    absl::StatusOr<Epsilon> eps = ParsePositiveEpsilon(opts.charge, "--charge");
    if (!eps.ok()) return eps.status();
    charged = ledger->Charge(opts.description, *eps, absl::Now());
  } else if (!opts.plan_epsilon.empty()) {
    absl::StatusOr<Epsilon> eps =
        ParsePositiveEpsilon(opts.plan_epsilon, "--charge-plan");
    if (!eps.ok()) return eps.status();
    charged = ledger->Charge(CoverageReleasePlan(*eps), absl::Now());
  }
  if (charged.has_value()) {
    if (!charged->ok()) return charged->status();
    absl::Status appended = AppendToJournal(opts.journal, **charged);
    if (!appended.ok()) return appended;
  }
  ctx.out << "budget=" << ledger->budget().ToString() << "\n";
  ctx.out << "spent=" << ledger->spent().ToString() << "\n";
  ctx.out << "remaining=" << ledger->remaining().ToString() << "\n";
  return absl::OkStatus();
}

absl::Status RunReplay(const Context& ctx, const ReplayOptions& opts) {
  absl::StatusOr<RunManifest> manifest = ReadManifest(opts.manifest);
  if (!manifest.ok()) return manifest.status();
  if (manifest->argv.empty() || manifest->argv.front() == "replay") {
    return absl::InvalidArgumentError("manifest does not describe a run");
  }
  for (const auto& [path, digest] : manifest->input_digests) {
    absl::StatusOr<std::string> current = FileSha256(path);
    if (!current.ok()) return current.status();
    if (*current != digest) {
      return absl::FailedPreconditionError(
          absl::StrCat("input ", path, " changed since the recorded run"));
    }
  }
  std::vector<std::string> args = {"bbdp"};
  args.insert(args.end(), manifest->argv.begin(), manifest->argv.end());
  std::ostringstream log;
  std::ostringstream errors;
  if (RunCli(args, log, errors) != 0) {
    return absl::InternalError(
        absl::StrCat("replayed run failed: ", errors.str()));
  }
  for (const auto& [path, digest] : manifest->output_digests) {
    absl::StatusOr<std::string> current = FileSha256(path);
    if (!current.ok()) return current.status();
    if (*current != digest) {
      return absl::DataLossError(
          absl::StrCat("replayed output ", path, " differs from the record"));
    }
    ctx.out << "reproduced " << path << " sha256=" << digest << "\n";
  }
  return absl::OkStatus();
}

std::string OneLine(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Differentially private broadband coverage estimates", "bbdp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  int threads = static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  SynthOptions synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate synthetic counts and households");
  synth_cmd->add_option("--zones", synth.zones, "Number of zones")->required();
  synth_cmd->add_option("--households", synth.households,
                        "Household range low:high");
  synth_cmd->add_option("--bce", synth.bce, "True coverage range low:high");
  synth_cmd->add_option("--services-share", synth.services_share,
                        "Services share range low:high");
  synth_cmd->add_option("--seed", synth.seed, "Seed")->required();
  synth_cmd->add_option("--out-counts", synth.out_counts, "Counts CSV")
      ->required();
  synth_cmd->add_option("--out-households", synth.out_households,
                        "Households CSV")
      ->required();

  ReleaseOptionsCli release;
  CLI::App* release_cmd =
      app.add_subcommand("release", "Privatize counts and estimate coverage");
  release_cmd->add_option("--counts", release.counts, "Counts CSV")
      ->required();
  release_cmd->add_option("--households", release.households, "Households CSV")
      ->required();
  release_cmd->add_option("--epsilon", release.epsilon, "Per-query epsilon");
  release_cmd->add_option("--seed", release.seed, "Seed")->required();
  release_cmd->add_option("--k", release.k,
                          "Error-simulation iterations (0 skips)");
  release_cmd->add_option("--out", release.out, "Coverage CSV")->required();
  release_cmd->add_option("--out-private-counts", release.out_private_counts,
                          "Noisy counts CSV (default <out>.private_counts.csv)");
  release_cmd->add_flag("--round-counts", release.round_counts,
                        "Round noisy counts to integers");
  release_cmd->add_option("--journal", release.journal,
                          "Budget journal to charge");
  release_cmd->add_option("--budget", release.budget, "Total budget");

  SimulateOptions simulate;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate-error", "Estimate per-zone error ranges from a release");
  simulate_cmd->add_option("--release", simulate.release, "Coverage CSV")
      ->required();
  simulate_cmd->add_option(
      "--private-counts", simulate.private_counts,
      "Noisy counts CSV (default <release>.private_counts.csv)");
  simulate_cmd->add_option("--households", simulate.households,
                           "Households CSV")
      ->required();
  simulate_cmd->add_option("--epsilon", simulate.epsilon, "Per-query epsilon");
  simulate_cmd->add_option("--k", simulate.k, "Simulated releases per zone")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", simulate.seed, "Seed")->required();
  simulate_cmd->add_option("--out", simulate.out, "Coverage CSV with errors")
      ->required();

  SummarizeOptions summarize;
  CLI::App* summarize_cmd = app.add_subcommand(
      "summarize", "Average error metrics over household buckets");
  summarize_cmd->add_option("--in", summarize.in, "Coverage CSV with errors")
      ->required();
  summarize_cmd->add_option("--households", summarize.households,
                            "Households CSV")
      ->required();
  summarize_cmd->add_option("--thresholds", summarize.thresholds,
                            "Ascending bucket thresholds");
  summarize_cmd->add_option("--out", summarize.out, "Bucket CSV")->required();

  BudgetOptions budget;
  CLI::App* budget_cmd =
      app.add_subcommand("budget", "Show or charge the privacy budget");
  budget_cmd->add_option("--journal", budget.journal, "Journal file")
      ->required();
  budget_cmd->add_option("--budget", budget.budget, "Total budget")->required();
  CLI::Option* charge_opt =
      budget_cmd->add_option("--charge", budget.charge, "Epsilon to charge");
  budget_cmd->add_option("--description", budget.description,
                         "Journal description for --charge");
  budget_cmd
      ->add_option("--charge-plan", budget.plan_epsilon,
                   "Charge the coverage release plan at this per-query "
                   "epsilon")
      ->excludes(charge_opt);

  ReplayOptions replay;
  CLI::App* replay_cmd =
      app.add_subcommand("replay", "Rerun a manifest and verify its outputs");
  replay_cmd->add_option("--manifest", replay.manifest, "Manifest file")
      ->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << OneLine(e.what()) << "\n";
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  Context ctx{std::vector<std::string>(args.begin() + 1, args.end()), threads,
              out, err};
  absl::Status status;
  if (synth_cmd->parsed()) {
    status = RunSynth(ctx, synth);
  } else if (release_cmd->parsed()) {
    status = RunRelease(ctx, release);
  } else if (simulate_cmd->parsed()) {
    status = RunSimulateError(ctx, simulate);
  } else if (summarize_cmd->parsed()) {
    status = RunSummarize(ctx, summarize);
  } else if (budget_cmd->parsed()) {
    status = RunBudget(ctx, budget);
  } else if (replay_cmd->parsed()) {
    status = RunReplay(ctx, replay);
  }
  if (!status.ok()) {
    err << "error: " << OneLine(std::string(status.message())) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace broadband_dp
