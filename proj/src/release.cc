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

#include "broadband_dp/release.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/types/span.h"
#include "broadband_dp/accountant.h"
#include "broadband_dp/mechanism.h"
#include "broadband_dp/parallel.h"

namespace broadband_dp {

absl::Status ValidateRawRecord(const RawZipRecord& record) {
  if (record.low_speed_devices < 0 || record.high_speed_devices < 0 ||
      record.services_devices < 0 || record.non_services_devices < 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "zone ", record.zone.str(), ": device counts must be nonnegative"));
  }
  return absl::OkStatus();
}

absl::StatusOr<HouseholdTable> MakeHouseholdTable(
    absl::Span<const HouseholdRecord> records) {
  HouseholdTable table;
  table.reserve(records.size());
  for (const HouseholdRecord& record : records) {
    if (record.households < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("zone ", record.zone.str(),
                       ": households must be at least 1, got ",
                       record.households));
    }
    if (!table.emplace(record.zone, record.households).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate household zone ", record.zone.str()));
    }
  }
  return table;
}

absl::StatusOr<double> ComputeBce(double high_speed, double services,
                                  double non_services, int64_t households) {
  if (!std::isfinite(high_speed) || !std::isfinite(services) ||
      !std::isfinite(non_services) || high_speed < 0 || services < 0 ||
      non_services < 0) {
    return absl::InvalidArgumentError(
        "coverage inputs must be finite and nonnegative");
  }
  if (households < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("households must be at least 1, got ", households));
  }
  if (services == 0) {
    return absl::FailedPreconditionError(
        "coverage undefined: no devices using the services");
  }
  return high_speed * (services + non_services) /
         (services * static_cast<double>(households));
}

double ClipToUnitInterval(double value) {
  return std::clamp(value, 0.0, 1.0);
}

CoverageEstimate EstimateCoverage(const ZoneId& zone, double high_speed,
                                  double services, double non_services,
                                  std::optional<int64_t> households) {
  CoverageEstimate estimate{zone, std::nullopt, std::nullopt};
  if (!households.has_value()) return estimate;
  absl::StatusOr<double> raw =
      ComputeBce(high_speed, services, non_services, *households);
  if (!raw.ok()) return estimate;
  estimate.raw_bce = *raw;
  estimate.bce = ClipToUnitInterval(*raw);
  return estimate;
}

CoverageEstimate EstimateCoverage(const PrivateZipRecord& record,
                                  std::optional<int64_t> households) {
  return EstimateCoverage(record.zone, record.high_speed_devices,
                          record.services_devices,
                          record.non_services_devices, households);
}

absl::StatusOr<PrivateZipRecord> PrivatizeRecord(const RawZipRecord& raw,
                                                 Epsilon per_query_epsilon,
                                                 uint64_t base_seed) {
  absl::Status valid = ValidateRawRecord(raw);
  if (!valid.ok()) return valid;
  absl::StatusOr<Epsilon> total =
      TotalEpsilon(CoverageReleasePlan(per_query_epsilon));
  if (!total.ok()) return total.status();
  absl::StatusOr<LaplaceParams> params =
      LaplaceParams::ForCount(per_query_epsilon.ToDouble());
  if (!params.ok()) return params.status();

  auto noisy = [&](int64_t count, const char* query) {
    return PrivatizeCount(count, *params,
                          NoiseSeed{base_seed, {raw.zone.str(), query, 0}});
  };
  PrivateZipRecord out{raw.zone};
  out.epsilon_total = *total;
  // Counts were validated above, so PrivatizeCount cannot fail here.
  out.low_speed_devices = *noisy(raw.low_speed_devices, kLowSpeedQuery);
  out.high_speed_devices = *noisy(raw.high_speed_devices, kHighSpeedQuery);
  out.services_devices = *noisy(raw.services_devices, kServicesQuery);
  out.non_services_devices =
      *noisy(raw.non_services_devices, kNonServicesQuery);
  return out;
}

absl::StatusOr<std::vector<ReleasedZone>> ReleaseDataset(
    absl::Span<const RawZipRecord> records, const HouseholdTable& households,
    Epsilon per_query_epsilon, uint64_t base_seed,
    const ReleaseOptions& options) {
  {
    absl::flat_hash_set<ZoneId> seen;
    seen.reserve(records.size());
    for (const RawZipRecord& record : records) {
      if (!seen.insert(record.zone).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("duplicate zone ", record.zone.str()));
      }
      absl::Status valid = ValidateRawRecord(record);
      if (!valid.ok()) return valid;
    }
  }
  if (!per_query_epsilon.is_positive()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "per-query epsilon must be positive, got ",
        per_query_epsilon.ToString()));
  }

  std::vector<std::optional<ReleasedZone>> slots(records.size());
  std::vector<absl::Status> errors(records.size());
  ParallelFor(records.size(), options.threads, [&](size_t i) {
    absl::StatusOr<PrivateZipRecord> counts =
        PrivatizeRecord(records[i], per_query_epsilon, base_seed);
    if (!counts.ok()) {
      errors[i] = counts.status();
      return;
    }
    if (options.round_counts) {
      counts->low_speed_devices = std::round(counts->low_speed_devices);
      counts->high_speed_devices = std::round(counts->high_speed_devices);
      counts->services_devices = std::round(counts->services_devices);
      counts->non_services_devices = std::round(counts->non_services_devices);
    }
    std::optional<int64_t> hh;
    if (auto it = households.find(records[i].zone); it != households.end()) {
      hh = it->second;
    }
    CoverageEstimate coverage = EstimateCoverage(*counts, hh);
    slots[i] = ReleasedZone{*std::move(counts), std::move(coverage)};
  });

  std::vector<ReleasedZone> out;
  out.reserve(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    if (!errors[i].ok()) return errors[i];
    out.push_back(*std::move(slots[i]));
  }
  return out;
}

}  // namespace broadband_dp
