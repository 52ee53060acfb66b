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

#ifndef BROADBAND_DP_MECHANISM_H_
#define BROADBAND_DP_MECHANISM_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"

namespace broadband_dp {

// Sensitivity and privacy loss of a Laplace mechanism. The noise scale is
// always derived as sensitivity / epsilon and never stored on its own.
class LaplaceParams {
 public:
  // Both arguments must be finite and strictly positive.
  static absl::StatusOr<LaplaceParams> Create(double sensitivity,
                                              double epsilon);

  // Sensitivity 1, the l1-sensitivity of a counting query.
  static absl::StatusOr<LaplaceParams> ForCount(double epsilon) {
    return Create(1.0, epsilon);
  }

  double sensitivity() const { return sensitivity_; }
  double epsilon() const { return epsilon_; }
  double scale() const { return sensitivity_ / epsilon_; }

 private:
  LaplaceParams(double sensitivity, double epsilon)
      : sensitivity_(sensitivity), epsilon_(epsilon) {}

  double sensitivity_;
  double epsilon_;
};

// Names one independent noise stream: which zone, which released quantity,
// and which release (0 for the published release, 1..k for simulations).
struct StreamId {
  std::string zone;
  std::string query;
  uint64_t iteration = 0;
};

// A noise draw is a pure function of (base_seed, stream). Equal seeds give
// bit-identical draws on every platform; distinct streams are independent.
struct NoiseSeed {
  uint64_t base_seed = 0;
  StreamId stream;
};

// 64 well-mixed bits for the stream. Counter-based: no generator state, so
// any number of workers can draw in any order.
uint64_t StreamBits(const NoiseSeed& seed);

// Uniform draw on the open interval (-1/2, 1/2), on a grid of 2^-54. Both
// endpoints are excluded so the inverse CDF below never evaluates log(0).
double SampleCenteredUniform(const NoiseSeed& seed);

// Uniform draw on [0, 1) with 53 random bits. Used by the synthetic data
// generator, not by the privacy mechanism.
double SampleUnitUniform(const NoiseSeed& seed);

// Inverse CDF of Lap(0, scale): -scale * sgn(u) * ln(1 - 2|u|).
// Requires |u| < 1/2.
double LaplaceFromUniform(double scale, double u);

// One draw from Lap(0, params.scale()).
double SampleLaplace(const LaplaceParams& params, const NoiseSeed& seed);

// max(0, count + noise). Clamping is the final step of every noisy count.
double ClampNoisyCount(double count, double noise);

// Laplace mechanism for a counting query followed by clamping at zero. The
// result is real-valued; no rounding is applied.
absl::StatusOr<double> PrivatizeCount(int64_t count,
                                      const LaplaceParams& params,
                                      const NoiseSeed& seed);

}  // namespace broadband_dp

#endif  // BROADBAND_DP_MECHANISM_H_
