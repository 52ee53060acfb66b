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

#ifndef BROADBAND_DP_CSV_IO_H_
#define BROADBAND_DP_CSV_IO_H_

#include <optional>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "broadband_dp/epsilon.h"
#include "broadband_dp/errorsim.h"
#include "broadband_dp/release.h"
#include "broadband_dp/zone.h"

namespace broadband_dp {

// Plain comma-separated files without quoting: every field in these formats
// is a zip code, a number or empty. A UTF-8 byte-order mark and CRLF line
// endings are accepted on input; output always uses LF. Any malformed row
// fails the whole read with "<source>:<line>: <reason>".

inline constexpr char kCountsHeader[] =
    "zip,low_speed_devices,high_speed_devices,services_devices,"
    "non_services_devices";
inline constexpr char kHouseholdsHeader[] = "zip,households";
inline constexpr char kPrivateCountsHeader[] =
    "zip,low_speed_devices_dp,high_speed_devices_dp,services_devices_dp,"
    "non_services_devices_dp,epsilon";
inline constexpr char kCoverageHeader[] =
    "zip,broadband_usage,broadband_usage_raw,error_mae,error_msd,error_p95,"
    "epsilon";
inline constexpr char kBucketHeader[] =
    "bucket_low,bucket_high,zones,mean_mae,mean_msd,mean_p95";

struct CsvRow {
  int line_number = 0;
  std::vector<std::string> fields;
};

// Splits `content`, checks the header line exactly and every row's field
// count. Blank lines are skipped.
absl::StatusOr<std::vector<CsvRow>> ParseCsv(absl::string_view content,
                                             absl::string_view expected_header,
                                             absl::string_view source);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, absl::string_view content);

// One row of the published coverage table. Empty fields are nullopt.
struct CoverageRow {
  ZoneId zone;
  std::optional<double> broadband_usage;
  std::optional<double> broadband_usage_raw;
  std::optional<double> error_mae;
  std::optional<double> error_msd;
  std::optional<double> error_p95;
  Epsilon epsilon;
};

// Builds table rows from release output; error columns are filled when
// `errors` is non-empty (same order and length as `released`).
absl::StatusOr<std::vector<CoverageRow>> MakeCoverageRows(
    absl::Span<const ReleasedZone> released,
    absl::Span<const ErrorReport> errors);

std::string FormatCounts(absl::Span<const RawZipRecord> records);
std::string FormatHouseholds(absl::Span<const HouseholdRecord> records);
// Noisy counts use 17 significant digits so they read back bit-exactly.
std::string FormatPrivateCounts(absl::Span<const PrivateZipRecord> records);
// broadband_usage with three decimals, the raw value with six, error columns
// with six significant digits.
std::string FormatCoverage(absl::Span<const CoverageRow> rows);
std::string FormatBuckets(absl::Span<const BucketSummary> buckets);

absl::StatusOr<std::vector<RawZipRecord>> ParseCounts(absl::string_view content,
                                                      absl::string_view source);
absl::StatusOr<std::vector<HouseholdRecord>> ParseHouseholds(
    absl::string_view content, absl::string_view source);
absl::StatusOr<std::vector<PrivateZipRecord>> ParsePrivateCounts(
    absl::string_view content, absl::string_view source);
absl::StatusOr<std::vector<CoverageRow>> ParseCoverage(
    absl::string_view content, absl::string_view source);
absl::StatusOr<std::vector<BucketSummary>> ParseBuckets(
    absl::string_view content, absl::string_view source);

}  // namespace broadband_dp

#endif  // BROADBAND_DP_CSV_IO_H_
