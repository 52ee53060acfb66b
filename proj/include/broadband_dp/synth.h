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

#ifndef BROADBAND_DP_SYNTH_H_
#define BROADBAND_DP_SYNTH_H_

#include <cstdint>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "broadband_dp/release.h"

namespace broadband_dp {

// Closed intervals.
struct IntRange {
  int64_t low = 0;
  int64_t high = 0;
};
struct RealRange {
  double low = 0;
  double high = 0;
};

// Parses "low:high".
absl::StatusOr<IntRange> ParseIntRange(absl::string_view text);
absl::StatusOr<RealRange> ParseRealRange(absl::string_view text);

struct SynthSpec {
  int64_t zone_count = 0;
  IntRange households{50, 200'000};
  RealRange true_bce{0.1, 0.95};
  RealRange services_share{0.5, 0.9};
  uint64_t seed = 0;
};

absl::Status ValidateSynthSpec(const SynthSpec& spec);

struct SyntheticDataset {
  std::vector<RawZipRecord> counts;
  std::vector<HouseholdRecord> households;
};

// Synthetic counts with one services-or-not device per household:
//
//   services + non_services = households
//   services                = round(share * households)
//   high_speed              = round(coverage * services)
//   low_speed               = services - high_speed
//
// so the true-count coverage is high_speed / services, within 0.5 / services
// of the drawn coverage (within 1 / households whenever share >= 1/2).
// Zones are numbered "00000", "00001", ...; at most 100000 zones.
absl::StatusOr<SyntheticDataset> GenerateSynthetic(const SynthSpec& spec);

// Counts for a single zone from explicit parameters; GenerateSynthetic draws
// the parameters and calls this.
RawZipRecord SynthesizeZone(const ZoneId& zone, int64_t households,
                            double coverage, double services_share);

}  // namespace broadband_dp

#endif  // BROADBAND_DP_SYNTH_H_
