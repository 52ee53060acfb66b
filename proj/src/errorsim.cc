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

#include "broadband_dp/errorsim.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/types/span.h"
#include "broadband_dp/mechanism.h"
#include "broadband_dp/parallel.h"
#include "broadband_dp/release.h"

namespace broadband_dp {
namespace {

std::optional<double> DeviationFrom(double released_bce,
                                    const PrivateZipRecord& released,
                                    int64_t households, double high_noise,
                                    double services_noise,
                                    double non_services_noise) {
  const CoverageEstimate simulated = EstimateCoverage(
      released.zone,
      ClampNoisyCount(released.high_speed_devices, high_noise),
      ClampNoisyCount(released.services_devices, services_noise),
      ClampNoisyCount(released.non_services_devices, non_services_noise),
      households);
  if (!simulated.defined()) return std::nullopt;
  return released_bce - *simulated.bce;
}

struct SimulationNoise {
  double high;
  double services;
  double non_services;
};

SimulationNoise DrawSimulationNoise(const LaplaceParams& params,
                                    const ZoneId& zone, uint64_t base_seed,
                                    uint64_t iteration) {
  auto draw = [&](const char* query) {
    return SampleLaplace(params,
                         NoiseSeed{base_seed, {zone.str(), query, iteration}});
  };
  return {draw(kHighSpeedQuery), draw(kServicesQuery),
          draw(kNonServicesQuery)};
}

ErrorReport NoStatistics(const ZoneId& zone, int64_t k) {
  return ErrorReport{zone, std::nullopt, k, 0.0};
}

}  // namespace

absl::Status ValidateSimulationConfig(const SimulationConfig& config) {
  if (config.k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("simulation needs k >= 1, got ", config.k));
  }
  if (!config.per_query_epsilon.is_positive()) {
    return absl::InvalidArgumentError(
        absl::StrCat("per-query epsilon must be positive, got ",
                     config.per_query_epsilon.ToString()));
  }
  return absl::OkStatus();
}

std::optional<double> SimulatedDeviation(const PrivateZipRecord& released,
                                         int64_t households,
                                         double high_speed_noise,
                                         double services_noise,
                                         double non_services_noise) {
  const CoverageEstimate published = EstimateCoverage(released, households);
  if (!published.defined()) return std::nullopt;
  return DeviationFrom(*published.bce, released, households, high_speed_noise,
                       services_noise, non_services_noise);
}

absl::StatusOr<std::optional<double>> SimulateOnce(
    const PrivateZipRecord& released, int64_t households,
    Epsilon per_query_epsilon, uint64_t base_seed, uint64_t iteration) {
  if (iteration == 0) {
    return absl::InvalidArgumentError(
        "simulation iterations start at 1; iteration 0 is the release stream");
  }
  absl::StatusOr<LaplaceParams> params =
      LaplaceParams::ForCount(per_query_epsilon.ToDouble());
  if (!params.ok()) return params.status();
  const SimulationNoise noise =
      DrawSimulationNoise(*params, released.zone, base_seed, iteration);
  return SimulatedDeviation(released, households, noise.high, noise.services,
                            noise.non_services);
}

double NearestRankPercentile(absl::Span<const double> values, int percent) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  // ceil(percent * n / 100) in integers; 0.95 * 100 is not exactly 95.
  size_t rank = (static_cast<size_t>(percent) * n + 99) / 100;
  rank = std::clamp<size_t>(rank, 1, n);
  return sorted[rank - 1];
}

std::optional<ErrorStats> SummarizeDeviations(
    absl::Span<const double> deviations) {
  if (deviations.empty()) return std::nullopt;
  std::vector<double> absolute;
  absolute.reserve(deviations.size());
  double abs_sum = 0;
  double signed_sum = 0;
  for (double d : deviations) {
    absolute.push_back(std::fabs(d));
    abs_sum += std::fabs(d);
    signed_sum += d;
  }
  const double n = static_cast<double>(deviations.size());
  ErrorStats stats;
  stats.mae = abs_sum / n;
  stats.msd = signed_sum / n;
  stats.p95 = NearestRankPercentile(absolute, 95);
  return stats;
}

absl::StatusOr<ErrorReport> EstimateErrorRanges(
    const PrivateZipRecord& released, int64_t households,
    const SimulationConfig& config) {
  absl::Status valid = ValidateSimulationConfig(config);
  if (!valid.ok()) return valid;
  if (households < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "zone ", released.zone.str(), ": households must be at least 1"));
  }
  absl::StatusOr<LaplaceParams> params =
      LaplaceParams::ForCount(config.per_query_epsilon.ToDouble());
  if (!params.ok()) return params.status();

  const CoverageEstimate published = EstimateCoverage(released, households);
  if (!published.defined()) return NoStatistics(released.zone, config.k);

  std::vector<double> deviations;
  deviations.reserve(static_cast<size_t>(config.k));
  for (int64_t i = 1; i <= config.k; ++i) {
    const SimulationNoise noise = DrawSimulationNoise(
        *params, released.zone, config.base_seed, static_cast<uint64_t>(i));
    std::optional<double> d =
        DeviationFrom(*published.bce, released, households, noise.high,
                      noise.services, noise.non_services);
    if (d.has_value()) deviations.push_back(*d);
  }
  ErrorReport report{released.zone};
  report.k = config.k;
  report.defined_fraction = static_cast<double>(deviations.size()) /
                            static_cast<double>(config.k);
  report.stats = SummarizeDeviations(deviations);
  return report;
}

absl::StatusOr<std::vector<ErrorReport>> EstimateDatasetErrorRanges(
    absl::Span<const PrivateZipRecord> released,
    const HouseholdTable& households, const SimulationConfig& config,
    int threads) {
  absl::Status valid = ValidateSimulationConfig(config);
  if (!valid.ok()) return valid;
  std::vector<std::optional<ErrorReport>> slots(released.size());
  std::vector<absl::Status> errors(released.size());
  ParallelFor(released.size(), threads, [&](size_t i) {
    auto it = households.find(released[i].zone);
    if (it == households.end()) {
      slots[i] = NoStatistics(released[i].zone, config.k);
      return;
    }
    absl::StatusOr<ErrorReport> report =
        EstimateErrorRanges(released[i], it->second, config);
    if (!report.ok()) {
      errors[i] = report.status();
      return;
    }
    slots[i] = *std::move(report);
  });
  std::vector<ErrorReport> out;
  out.reserve(released.size());
  for (size_t i = 0; i < released.size(); ++i) {
    if (!errors[i].ok()) return errors[i];
    out.push_back(*std::move(slots[i]));
  }
  return out;
}

absl::StatusOr<std::vector<BucketSummary>> BucketByHouseholds(
    absl::Span<const ZoneErrorSample> samples,
    absl::Span<const int64_t> thresholds) {
  if (thresholds.empty()) {
    return absl::InvalidArgumentError("at least one threshold is required");
  }
  if (thresholds.front() < 0) {
    return absl::InvalidArgumentError("thresholds must be nonnegative");
  }
  for (size_t i = 1; i < thresholds.size(); ++i) {
    if (thresholds[i] <= thresholds[i - 1]) {
      return absl::InvalidArgumentError(
          absl::StrCat("thresholds must be strictly ascending: ",
                       thresholds[i - 1], " then ", thresholds[i]));
    }
  }

  std::vector<BucketSummary> buckets;
  if (thresholds.front() > 0) {
    buckets.push_back({HouseholdRange{0, thresholds.front()}});
  }
  for (size_t i = 0; i < thresholds.size(); ++i) {
    std::optional<int64_t> high;
    if (i + 1 < thresholds.size()) high = thresholds[i + 1];
    buckets.push_back({HouseholdRange{thresholds[i], high}});
  }

  struct Sums {
    double mae = 0, msd = 0, p95 = 0;
  };
  std::vector<Sums> sums(buckets.size());
  for (const ZoneErrorSample& sample : samples) {
    if (!sample.report.stats.has_value()) continue;
    if (sample.households < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("zone ", sample.report.zone.str(),
                       ": negative household count"));
    }
    // Ranges are sorted, so the owning bucket is the last one whose low end
    // does not exceed the household count.
    auto it = std::upper_bound(
        buckets.begin(), buckets.end(), sample.households,
        [](int64_t h, const BucketSummary& b) { return h < b.range.low; });
    const size_t index = static_cast<size_t>(it - buckets.begin()) - 1;
    const ErrorStats& stats = *sample.report.stats;
    buckets[index].zone_count++;
    sums[index].mae += stats.mae;
    sums[index].msd += stats.msd;
    sums[index].p95 += stats.p95;
  }
  for (size_t i = 0; i < buckets.size(); ++i) {
    if (buckets[i].zone_count == 0) continue;
    const double n = static_cast<double>(buckets[i].zone_count);
    buckets[i].mean_mae = sums[i].mae / n;
    buckets[i].mean_msd = sums[i].msd / n;
    buckets[i].mean_p95 = sums[i].p95 / n;
  }
  return buckets;
}

}  // namespace broadband_dp
