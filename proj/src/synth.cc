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

#include "broadband_dp/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "broadband_dp/mechanism.h"

namespace broadband_dp {
namespace {

constexpr int64_t kMaxZones = 100'000;

bool SplitRange(absl::string_view text, absl::string_view& low,
                absl::string_view& high) {
  const size_t colon = text.find(':');
  if (colon == absl::string_view::npos) return false;
  low = text.substr(0, colon);
  high = text.substr(colon + 1);
  return true;
}

// Stream labels for synthetic draws; distinct from the release labels.
double Draw(uint64_t seed, const std::string& zone, const char* what) {
  return SampleUnitUniform(NoiseSeed{seed, {zone, what, 0}});
}

}  // namespace

absl::StatusOr<IntRange> ParseIntRange(absl::string_view text) {
  absl::string_view low, high;
  IntRange range;
  if (!SplitRange(text, low, high) || !absl::SimpleAtoi(low, &range.low) ||
      !absl::SimpleAtoi(high, &range.high)) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected integer range low:high, got '", text, "'"));
  }
  return range;
}

absl::StatusOr<RealRange> ParseRealRange(absl::string_view text) {
  absl::string_view low, high;
  RealRange range;
  if (!SplitRange(text, low, high) || !absl::SimpleAtod(low, &range.low) ||
      !absl::SimpleAtod(high, &range.high)) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected range low:high, got '", text, "'"));
  }
  return range;
}

absl::Status ValidateSynthSpec(const SynthSpec& spec) {
  if (spec.zone_count < 0 || spec.zone_count > kMaxZones) {
    return absl::InvalidArgumentError(absl::StrCat(
        "zone count must be in [0, ", kMaxZones, "], got ", spec.zone_count));
  }
  if (spec.households.low < 1 || spec.households.high < spec.households.low) {
    return absl::InvalidArgumentError(absl::StrCat(
        "household range must satisfy 1 <= low <= high, got ",
        spec.households.low, ":", spec.households.high));
  }
  if (!(spec.true_bce.low >= 0 && spec.true_bce.low <= spec.true_bce.high &&
        spec.true_bce.high <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("coverage range must lie within [0, 1], got ",
                     spec.true_bce.low, ":", spec.true_bce.high));
  }
  if (!(spec.services_share.low > 0 &&
        spec.services_share.low <= spec.services_share.high &&
        spec.services_share.high <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("services share range must lie within (0, 1], got ",
                     spec.services_share.low, ":", spec.services_share.high));
  }
  return absl::OkStatus();
}

RawZipRecord SynthesizeZone(const ZoneId& zone, int64_t households,
                            double coverage, double services_share) {
  const auto services = std::clamp<int64_t>(
      std::llround(services_share * static_cast<double>(households)), 0,
      households);
  const auto high_speed = std::clamp<int64_t>(
      std::llround(coverage * static_cast<double>(services)), 0, services);
  RawZipRecord record{zone};
  record.services_devices = services;
  record.non_services_devices = households - services;
  record.high_speed_devices = high_speed;
  record.low_speed_devices = std::max<int64_t>(0, services - high_speed);
  return record;
}

absl::StatusOr<SyntheticDataset> GenerateSynthetic(const SynthSpec& spec) {
  absl::Status valid = ValidateSynthSpec(spec);
  if (!valid.ok()) return valid;
  SyntheticDataset out;
  out.counts.reserve(static_cast<size_t>(spec.zone_count));
  out.households.reserve(static_cast<size_t>(spec.zone_count));
  const uint64_t span =
      static_cast<uint64_t>(spec.households.high - spec.households.low) + 1;
  for (int64_t i = 0; i < spec.zone_count; ++i) {
    const std::string code = absl::StrFormat("%05d", i);
    absl::StatusOr<ZoneId> zone = ZoneId::Parse(code);
    if (!zone.ok()) return zone.status();

    const uint64_t offset = std::min<uint64_t>(
        span - 1, static_cast<uint64_t>(Draw(spec.seed, code, "households") *
                                        static_cast<double>(span)));
    const int64_t households =
        spec.households.low + static_cast<int64_t>(offset);
    const double coverage =
        spec.true_bce.low + (spec.true_bce.high - spec.true_bce.low) *
                                Draw(spec.seed, code, "coverage");
    const double share =
        spec.services_share.low +
        (spec.services_share.high - spec.services_share.low) *
            Draw(spec.seed, code, "services_share");

    out.counts.push_back(SynthesizeZone(*zone, households, coverage, share));
    out.households.push_back(HouseholdRecord{*zone, households});
  }
  return out;
}

}  // namespace broadband_dp
