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

#include "broadband_dp/csv_io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/types/span.h"

namespace broadband_dp {
namespace {

constexpr absl::string_view kUtf8Bom = "\xEF\xBB\xBF";

size_t CountFields(absl::string_view header) {
  return static_cast<size_t>(std::count(header.begin(), header.end(), ',')) +
         1;
}

absl::Status RowError(absl::string_view source, const CsvRow& row,
                      absl::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat(source, ":", row.line_number, ": ", what));
}

absl::StatusOr<ZoneId> ZoneField(absl::string_view source, const CsvRow& row) {
  absl::StatusOr<ZoneId> zone = ZoneId::Parse(row.fields[0]);
  if (!zone.ok()) return RowError(source, row, zone.status().message());
  return zone;
}

absl::Status IntField(absl::string_view source, const CsvRow& row, size_t i,
                      absl::string_view name, int64_t& out) {
  if (!absl::SimpleAtoi(row.fields[i], &out)) {
    return RowError(source, row,
                    absl::StrCat(name, ": not an integer: '", row.fields[i],
                                 "'"));
  }
  return absl::OkStatus();
}

absl::Status RealField(absl::string_view source, const CsvRow& row, size_t i,
                       absl::string_view name, double& out) {
  if (!absl::SimpleAtod(row.fields[i], &out) || !std::isfinite(out)) {
    return RowError(source, row,
                    absl::StrCat(name, ": not a finite number: '",
                                 row.fields[i], "'"));
  }
  return absl::OkStatus();
}

absl::Status OptionalRealField(absl::string_view source, const CsvRow& row,
                               size_t i, absl::string_view name,
                               std::optional<double>& out) {
  if (row.fields[i].empty()) {
    out.reset();
    return absl::OkStatus();
  }
  double value;
  absl::Status status = RealField(source, row, i, name, value);
  if (!status.ok()) return status;
  out = value;
  return absl::OkStatus();
}

absl::Status EpsilonField(absl::string_view source, const CsvRow& row, size_t i,
                          Epsilon& out) {
  absl::StatusOr<Epsilon> eps = Epsilon::Parse(row.fields[i]);
  if (!eps.ok()) return RowError(source, row, eps.status().message());
  out = *eps;
  return absl::OkStatus();
}

std::string OptionalFixed(const std::optional<double>& value, int decimals) {
  if (!value.has_value()) return "";
  return absl::StrFormat("%.*f", decimals, *value);
}

std::string OptionalGeneral(const std::optional<double>& value) {
  if (!value.has_value()) return "";
  return absl::StrFormat("%.6g", *value);
}

std::string Exact(double value) { return absl::StrFormat("%.17g", value); }

#define BBDP_RETURN_IF_ERROR(expr)      \
  do {                                  \
    absl::Status _status = (expr);      \
    if (!_status.ok()) return _status;  \
  } while (false)

}  // namespace

absl::StatusOr<std::vector<CsvRow>> ParseCsv(absl::string_view content,
                                             absl::string_view expected_header,
                                             absl::string_view source) {
  if (content.substr(0, kUtf8Bom.size()) == kUtf8Bom) {
    content.remove_prefix(kUtf8Bom.size());
  }
  const size_t width = CountFields(expected_header);
  std::vector<CsvRow> rows;
  bool saw_header = false;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(content, '\n')) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != expected_header) {
        return absl::InvalidArgumentError(
            absl::StrCat(source, ":", line_number, ": expected header '",
                         expected_header, "', got '", line, "'"));
      }
      saw_header = true;
      continue;
    }
    CsvRow row{line_number, absl::StrSplit(line, ',')};
    if (row.fields.size() != width) {
      return RowError(source, row,
                      absl::StrCat("expected ", width, " fields, got ",
                                   row.fields.size()));
    }
    rows.push_back(std::move(row));
  }
  if (!saw_header) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": missing header '", expected_header, "'"));
  }
  return rows;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return absl::DataLossError(absl::StrCat("error reading ", path));
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, absl::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot open ", path, " for writing"));
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) return absl::DataLossError(absl::StrCat("error writing ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::vector<CoverageRow>> MakeCoverageRows(
    absl::Span<const ReleasedZone> released,
    absl::Span<const ErrorReport> errors) {
  if (!errors.empty() && errors.size() != released.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("have ", errors.size(), " error reports for ",
                     released.size(), " zones"));
  }
  std::vector<CoverageRow> rows;
  rows.reserve(released.size());
  for (size_t i = 0; i < released.size(); ++i) {
    const ReleasedZone& zone = released[i];
    CoverageRow row{zone.counts.zone, zone.coverage.bce, zone.coverage.raw_bce};
    row.epsilon = zone.counts.epsilon_total;
    if (!errors.empty()) {
      if (errors[i].zone != zone.counts.zone) {
        return absl::InvalidArgumentError(
            absl::StrCat("error report for zone ", errors[i].zone.str(),
                         " does not match zone ", zone.counts.zone.str()));
      }
      if (errors[i].stats.has_value()) {
        row.error_mae = errors[i].stats->mae;
        row.error_msd = errors[i].stats->msd;
        row.error_p95 = errors[i].stats->p95;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatCounts(absl::Span<const RawZipRecord> records) {
  std::string out = absl::StrCat(kCountsHeader, "\n");
  for (const RawZipRecord& r : records) {
    absl::StrAppend(&out, r.zone.str(), ",", r.low_speed_devices, ",",
                    r.high_speed_devices, ",", r.services_devices, ",",
                    r.non_services_devices, "\n");
  }
  return out;
}

std::string FormatHouseholds(absl::Span<const HouseholdRecord> records) {
  std::string out = absl::StrCat(kHouseholdsHeader, "\n");
  for (const HouseholdRecord& r : records) {
    absl::StrAppend(&out, r.zone.str(), ",", r.households, "\n");
  }
  return out;
}

std::string FormatPrivateCounts(absl::Span<const PrivateZipRecord> records) {
  std::string out = absl::StrCat(kPrivateCountsHeader, "\n");
  for (const PrivateZipRecord& r : records) {
    absl::StrAppend(&out, r.zone.str(), ",", Exact(r.low_speed_devices), ",",
                    Exact(r.high_speed_devices), ",",
                    Exact(r.services_devices), ",",
                    Exact(r.non_services_devices), ",",
                    r.epsilon_total.ToString(), "\n");
  }
  return out;
}

std::string FormatCoverage(absl::Span<const CoverageRow> rows) {
  std::string out = absl::StrCat(kCoverageHeader, "\n");
  for (const CoverageRow& r : rows) {
    absl::StrAppend(&out, r.zone.str(), ",", OptionalFixed(r.broadband_usage, 3),
                    ",", OptionalFixed(r.broadband_usage_raw, 6), ",",
                    OptionalGeneral(r.error_mae), ",",
                    OptionalGeneral(r.error_msd), ",",
                    OptionalGeneral(r.error_p95), ",", r.epsilon.ToString(),
                    "\n");
  }
  return out;
}

std::string FormatBuckets(absl::Span<const BucketSummary> buckets) {
  std::string out = absl::StrCat(kBucketHeader, "\n");
  for (const BucketSummary& b : buckets) {
    absl::StrAppend(
        &out, b.range.low, ",",
        b.range.high.has_value() ? absl::StrCat(*b.range.high) : "", ",",
        b.zone_count, ",", OptionalGeneral(b.mean_mae), ",",
        OptionalGeneral(b.mean_msd), ",", OptionalGeneral(b.mean_p95), "\n");
  }
  return out;
}

absl::StatusOr<std::vector<RawZipRecord>> ParseCounts(absl::string_view content,
                                                      absl::string_view source) {
  absl::StatusOr<std::vector<CsvRow>> rows =
      ParseCsv(content, kCountsHeader, source);
  if (!rows.ok()) return rows.status();
  std::vector<RawZipRecord> out;
  out.reserve(rows->size());
  for (const CsvRow& row : *rows) {
    absl::StatusOr<ZoneId> zone = ZoneField(source, row);
    if (!zone.ok()) return zone.status();
    RawZipRecord r{*zone};
    BBDP_RETURN_IF_ERROR(
        IntField(source, row, 1, "low_speed_devices", r.low_speed_devices));
    BBDP_RETURN_IF_ERROR(
        IntField(source, row, 2, "high_speed_devices", r.high_speed_devices));
    BBDP_RETURN_IF_ERROR(
        IntField(source, row, 3, "services_devices", r.services_devices));
    BBDP_RETURN_IF_ERROR(IntField(source, row, 4, "non_services_devices",
                                  r.non_services_devices));
    absl::Status valid = ValidateRawRecord(r);
    if (!valid.ok()) return RowError(source, row, valid.message());
    out.push_back(std::move(r));
  }
  return out;
}

absl::StatusOr<std::vector<HouseholdRecord>> ParseHouseholds(
    absl::string_view content, absl::string_view source) {
  absl::StatusOr<std::vector<CsvRow>> rows =
      ParseCsv(content, kHouseholdsHeader, source);
  if (!rows.ok()) return rows.status();
  std::vector<HouseholdRecord> out;
  out.reserve(rows->size());
  for (const CsvRow& row : *rows) {
    absl::StatusOr<ZoneId> zone = ZoneField(source, row);
    if (!zone.ok()) return zone.status();
    HouseholdRecord r{*zone};
    BBDP_RETURN_IF_ERROR(IntField(source, row, 1, "households", r.households));
    if (r.households < 1) {
      return RowError(source, row, "households must be at least 1");
    }
    out.push_back(std::move(r));
  }
  return out;
}

absl::StatusOr<std::vector<PrivateZipRecord>> ParsePrivateCounts(
    absl::string_view content, absl::string_view source) {
  absl::StatusOr<std::vector<CsvRow>> rows =
      ParseCsv(content, kPrivateCountsHeader, source);
  if (!rows.ok()) return rows.status();
  std::vector<PrivateZipRecord> out;
  out.reserve(rows->size());
  for (const CsvRow& row : *rows) {
    absl::StatusOr<ZoneId> zone = ZoneField(source, row);
    if (!zone.ok()) return zone.status();
    PrivateZipRecord r{*zone};
    BBDP_RETURN_IF_ERROR(RealField(source, row, 1, "low_speed_devices_dp",
                                   r.low_speed_devices));
    BBDP_RETURN_IF_ERROR(RealField(source, row, 2, "high_speed_devices_dp",
                                   r.high_speed_devices));
    BBDP_RETURN_IF_ERROR(RealField(source, row, 3, "services_devices_dp",
                                   r.services_devices));
    BBDP_RETURN_IF_ERROR(RealField(source, row, 4, "non_services_devices_dp",
                                   r.non_services_devices));
    BBDP_RETURN_IF_ERROR(EpsilonField(source, row, 5, r.epsilon_total));
    if (r.low_speed_devices < 0 || r.high_speed_devices < 0 ||
        r.services_devices < 0 || r.non_services_devices < 0) {
      return RowError(source, row, "released counts must be nonnegative");
    }
    out.push_back(std::move(r));
  }
  return out;
}

absl::StatusOr<std::vector<CoverageRow>> ParseCoverage(
    absl::string_view content, absl::string_view source) {
  absl::StatusOr<std::vector<CsvRow>> rows =
      ParseCsv(content, kCoverageHeader, source);
  if (!rows.ok()) return rows.status();
  std::vector<CoverageRow> out;
  out.reserve(rows->size());
  for (const CsvRow& row : *rows) {
    absl::StatusOr<ZoneId> zone = ZoneField(source, row);
    if (!zone.ok()) return zone.status();
    CoverageRow r{*zone};
    BBDP_RETURN_IF_ERROR(
        OptionalRealField(source, row, 1, "broadband_usage", r.broadband_usage));
    BBDP_RETURN_IF_ERROR(OptionalRealField(source, row, 2,
                                           "broadband_usage_raw",
                                           r.broadband_usage_raw));
    BBDP_RETURN_IF_ERROR(
        OptionalRealField(source, row, 3, "error_mae", r.error_mae));
    BBDP_RETURN_IF_ERROR(
        OptionalRealField(source, row, 4, "error_msd", r.error_msd));
    BBDP_RETURN_IF_ERROR(
        OptionalRealField(source, row, 5, "error_p95", r.error_p95));
    BBDP_RETURN_IF_ERROR(EpsilonField(source, row, 6, r.epsilon));
    out.push_back(std::move(r));
  }
  return out;
}

absl::StatusOr<std::vector<BucketSummary>> ParseBuckets(
    absl::string_view content, absl::string_view source) {
  absl::StatusOr<std::vector<CsvRow>> rows =
      ParseCsv(content, kBucketHeader, source);
  if (!rows.ok()) return rows.status();
  std::vector<BucketSummary> out;
  out.reserve(rows->size());
  for (const CsvRow& row : *rows) {
    BucketSummary b;
    BBDP_RETURN_IF_ERROR(IntField(source, row, 0, "bucket_low", b.range.low));
    if (!row.fields[1].empty()) {
      int64_t high;
      BBDP_RETURN_IF_ERROR(IntField(source, row, 1, "bucket_high", high));
      b.range.high = high;
    }
    BBDP_RETURN_IF_ERROR(IntField(source, row, 2, "zones", b.zone_count));
    BBDP_RETURN_IF_ERROR(
        OptionalRealField(source, row, 3, "mean_mae", b.mean_mae));
    BBDP_RETURN_IF_ERROR(
        OptionalRealField(source, row, 4, "mean_msd", b.mean_msd));
    BBDP_RETURN_IF_ERROR(
        OptionalRealField(source, row, 5, "mean_p95", b.mean_p95));
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace broadband_dp
