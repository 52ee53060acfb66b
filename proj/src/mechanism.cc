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

#include "broadband_dp/mechanism.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"

namespace broadband_dp {
namespace {

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a, prefixed by the length so ("ab","c") and ("a","bc") differ.
uint64_t HashString(absl::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL ^ Mix64(s.size());
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr double kTwoToMinus53 = 1.0 / 9007199254740992.0;

}  // namespace

absl::StatusOr<LaplaceParams> LaplaceParams::Create(double sensitivity,
                                                    double epsilon) {
  if (!std::isfinite(sensitivity) || sensitivity <= 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Laplace sensitivity must be finite and positive, got ", sensitivity));
  }
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Laplace epsilon must be finite and positive, got ", epsilon));
  }
  return LaplaceParams(sensitivity, epsilon);
}

uint64_t StreamBits(const NoiseSeed& seed) {
  uint64_t h = Mix64(seed.base_seed);
  h = Mix64(h ^ HashString(seed.stream.zone));
  h = Mix64(h ^ HashString(seed.stream.query));
  h = Mix64(h ^ seed.stream.iteration);
  return Mix64(h);
}

double SampleCenteredUniform(const NoiseSeed& seed) {
  const uint64_t bits = StreamBits(seed);
  // w = 1 - 2|u| takes values (m + 1) * 2^-53 in (0, 1]; every step below is
  // exact, so 1 - 2|u| recovers w bit for bit in LaplaceFromUniform.
  const uint64_t m = bits >> 11;
  const double w = static_cast<double>(m + 1) * kTwoToMinus53;
  const double magnitude = (1.0 - w) / 2.0;
  return (bits & 1) ? -magnitude : magnitude;
}

double SampleUnitUniform(const NoiseSeed& seed) {
  return static_cast<double>(StreamBits(seed) >> 11) * kTwoToMinus53;
}

double LaplaceFromUniform(double scale, double u) {
  if (u == 0) return 0.0;
  const double sign = u < 0 ? -1.0 : 1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::fabs(u));
}

double SampleLaplace(const LaplaceParams& params, const NoiseSeed& seed) {
  return LaplaceFromUniform(params.scale(), SampleCenteredUniform(seed));
}

double ClampNoisyCount(double count, double noise) {
  return std::max(0.0, count + noise);
}

absl::StatusOr<double> PrivatizeCount(int64_t count,
                                      const LaplaceParams& params,
                                      const NoiseSeed& seed) {
  if (count < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("count must be nonnegative, got ", count));
  }
  if (params.sensitivity() != 1.0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "count queries have sensitivity 1, got ", params.sensitivity()));
  }
  return ClampNoisyCount(static_cast<double>(count),
                         SampleLaplace(params, seed));
}

}  // namespace broadband_dp
