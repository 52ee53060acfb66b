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

#ifndef BROADBAND_DP_RELEASE_H_
#define BROADBAND_DP_RELEASE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "broadband_dp/epsilon.h"
#include "broadband_dp/zone.h"

namespace broadband_dp {

// Stream labels of the four released counts.
inline constexpr char kLowSpeedQuery[] = "L";
inline constexpr char kHighSpeedQuery[] = "H";
inline constexpr char kServicesQuery[] = "M";
inline constexpr char kNonServicesQuery[] = "O";

// True per-zone device counts.
struct RawZipRecord {
  ZoneId zone;
  int64_t low_speed_devices = 0;     // below 25 Mbps
  int64_t high_speed_devices = 0;    // 25 Mbps or faster
  int64_t services_devices = 0;      // using the services
  int64_t non_services_devices = 0;  // not using the services
};

absl::Status ValidateRawRecord(const RawZipRecord& record);

// Public household counts; treated as exact.
struct HouseholdRecord {
  ZoneId zone;
  int64_t households = 0;
};

using HouseholdTable = absl::flat_hash_map<ZoneId, int64_t>;

// Rejects duplicate zones and household counts below 1.
absl::StatusOr<HouseholdTable> MakeHouseholdTable(
    absl::Span<const HouseholdRecord> records);

// Clamped noisy counts and the total privacy loss of producing them.
struct PrivateZipRecord {
  ZoneId zone;
  double low_speed_devices = 0;
  double high_speed_devices = 0;
  double services_devices = 0;
  double non_services_devices = 0;
  Epsilon epsilon_total;

  friend bool operator==(const PrivateZipRecord&,
                         const PrivateZipRecord&) = default;
};

// Broadband coverage for one zone. `bce` is clipped to [0, 1]; `raw_bce` is
// the value before clipping. Both are absent when the estimate is undefined
// (no services devices, or no household count for the zone).
struct CoverageEstimate {
  ZoneId zone;
  std::optional<double> bce;
  std::optional<double> raw_bce;

  bool defined() const { return bce.has_value(); }
};

// Fraction of households with broadband:
//
//   high_speed * (services / (services + non_services))^-1 / households
//
// evaluated as high_speed * (services + non_services) /
// (services * households). Returns FailedPrecondition when services == 0.
absl::StatusOr<double> ComputeBce(double high_speed, double services,
                                  double non_services, int64_t households);

double ClipToUnitInterval(double value);

// Coverage from the three counts that enter the estimate. The low-speed
// count is released but never used here.
CoverageEstimate EstimateCoverage(const ZoneId& zone, double high_speed,
                                  double services, double non_services,
                                  std::optional<int64_t> households);
CoverageEstimate EstimateCoverage(const PrivateZipRecord& record,
                                  std::optional<int64_t> households);

// Applies the clamped Laplace count mechanism to all four counts with
// sensitivity 1 and the given per-query epsilon, on streams
// (zone, "L"/"H"/"M"/"O", 0). epsilon_total comes from CoverageReleasePlan.
absl::StatusOr<PrivateZipRecord> PrivatizeRecord(const RawZipRecord& raw,
                                                 Epsilon per_query_epsilon,
                                                 uint64_t base_seed);

struct ReleaseOptions {
  int threads = 1;
  // Rounds each noisy count to the nearest integer before the coverage
  // estimate. Pure post-processing.
  bool round_counts = false;
};

struct ReleasedZone {
  PrivateZipRecord counts;
  CoverageEstimate coverage;
};

// One output per input record, in input order. Zones without a household
// count get an undefined estimate. Fails on a duplicate zone or an invalid
// record.
absl::StatusOr<std::vector<ReleasedZone>> ReleaseDataset(
    absl::Span<const RawZipRecord> records, const HouseholdTable& households,
    Epsilon per_query_epsilon, uint64_t base_seed,
    const ReleaseOptions& options = {});

}  // namespace broadband_dp

#endif  // BROADBAND_DP_RELEASE_H_
