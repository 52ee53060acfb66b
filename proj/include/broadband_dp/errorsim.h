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

#ifndef BROADBAND_DP_ERRORSIM_H_
#define BROADBAND_DP_ERRORSIM_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "broadband_dp/epsilon.h"
#include "broadband_dp/release.h"
#include "broadband_dp/zone.h"

namespace broadband_dp {

// Error-range estimation by re-noising the released counts. Everything in
// this file consumes PrivateZipRecord only and is therefore post-processing
// of the release: it costs no additional privacy.

inline constexpr int64_t kDefaultSimulationIterations = 1000;

struct SimulationConfig {
  int64_t k = kDefaultSimulationIterations;
  Epsilon per_query_epsilon = Epsilon::FromUnits(100'000'000);  // 0.1
  uint64_t base_seed = 0;
};

absl::Status ValidateSimulationConfig(const SimulationConfig& config);

struct ErrorStats {
  double mae = 0;  // mean |d|
  double msd = 0;  // mean d
  double p95 = 0;  // nearest-rank 95th percentile of |d|

  friend bool operator==(const ErrorStats&, const ErrorStats&) = default;
};

struct ErrorReport {
  ZoneId zone;
  // Absent when none of the k iterations produced a defined deviation.
  std::optional<ErrorStats> stats;
  int64_t k = 0;
  // Share of the k iterations whose simulated coverage was defined.
  double defined_fraction = 0;

  friend bool operator==(const ErrorReport&, const ErrorReport&) = default;
};

// d = released coverage - coverage of the re-noised counts, where each of the
// high-speed, services and non-services counts gets the given noise added
// and is clamped at zero. Both coverages are clipped to [0, 1]. nullopt when
// either coverage is undefined.
std::optional<double> SimulatedDeviation(const PrivateZipRecord& released,
                                         int64_t households,
                                         double high_speed_noise,
                                         double services_noise,
                                         double non_services_noise);

// One simulated release with fresh Lap(1/epsilon) noise on streams
// (zone, "H"/"M"/"O", iteration). Iteration 0 is the published release's
// stream and is rejected.
absl::StatusOr<std::optional<double>> SimulateOnce(
    const PrivateZipRecord& released, int64_t households,
    Epsilon per_query_epsilon, uint64_t base_seed, uint64_t iteration);

// Nearest-rank percentile: element ceil(percent * n / 100) (1-based) of the
// ascending sort. No interpolation, so the result is always a member of
// `values`. Requires a non-empty input and percent in [1, 100].
double NearestRankPercentile(absl::Span<const double> values, int percent);

// MAE, MSD and p95 of a deviation vector; nullopt for an empty vector.
std::optional<ErrorStats> SummarizeDeviations(
    absl::Span<const double> deviations);

// Runs SimulateOnce for iterations 1..k and summarizes the defined
// deviations.
absl::StatusOr<ErrorReport> EstimateErrorRanges(
    const PrivateZipRecord& released, int64_t households,
    const SimulationConfig& config);

// Per-zone reports in input order. Zones without a household count get a
// report with no statistics and defined_fraction 0.
absl::StatusOr<std::vector<ErrorReport>> EstimateDatasetErrorRanges(
    absl::Span<const PrivateZipRecord> released,
    const HouseholdTable& households, const SimulationConfig& config,
    int threads = 1);

// [low, high); high == nullopt means unbounded.
struct HouseholdRange {
  int64_t low = 0;
  std::optional<int64_t> high;

  bool Contains(int64_t households) const {
    return households >= low && (!high.has_value() || households < *high);
  }
};

struct BucketSummary {
  HouseholdRange range;
  int64_t zone_count = 0;
  // Absent for empty buckets.
  std::optional<double> mean_mae;
  std::optional<double> mean_msd;
  std::optional<double> mean_p95;
};

struct ZoneErrorSample {
  ErrorReport report;
  int64_t households = 0;
};

// Buckets [t_0, t_1), ..., [t_n-1, t_n), [t_n, inf), preceded by [0, t_0)
// when t_0 > 0, so every nonnegative household count lands in exactly one
// bucket. Reports without statistics are left out. Thresholds must be
// nonnegative and strictly ascending.
absl::StatusOr<std::vector<BucketSummary>> BucketByHouseholds(
    absl::Span<const ZoneErrorSample> samples,
    absl::Span<const int64_t> thresholds);

}  // namespace broadband_dp

#endif  // BROADBAND_DP_ERRORSIM_H_
