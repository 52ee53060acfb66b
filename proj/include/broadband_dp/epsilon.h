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

#ifndef BROADBAND_DP_EPSILON_H_
#define BROADBAND_DP_EPSILON_H_

#include <compare>
#include <cstdint>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"

namespace broadband_dp {

// A privacy-loss value held as a fixed-point decimal with nine fractional
// digits. Composition sums and maxima are exact, so 0.1 + 0.1 is reported as
// "0.2" rather than 0.20000000000000001.
class Epsilon {
 public:
  static constexpr int kFractionDigits = 9;
  static constexpr int64_t kUnitsPerOne = 1'000'000'000;

  constexpr Epsilon() = default;

  // Parses a plain decimal such as "0.1", "2" or "0.000000001". Rejects
  // signs, exponents and more than nine fractional digits.
  static absl::StatusOr<Epsilon> Parse(absl::string_view text);

  // Rounds to the nearest representable decimal. Rejects negative or
  // non-finite input.
  static absl::StatusOr<Epsilon> FromDouble(double value);

  static constexpr Epsilon FromUnits(int64_t units) { return Epsilon(units); }

  constexpr int64_t units() const { return units_; }
  constexpr bool is_positive() const { return units_ > 0; }
  double ToDouble() const;

  // Shortest decimal form: "0.2", "1", "0.05".
  std::string ToString() const;

  // Overflow-checked arithmetic.
  absl::StatusOr<Epsilon> Plus(Epsilon other) const;
  absl::StatusOr<Epsilon> Minus(Epsilon other) const;

  friend constexpr auto operator<=>(Epsilon, Epsilon) = default;

 private:
  constexpr explicit Epsilon(int64_t units) : units_(units) {}

  int64_t units_ = 0;
};

}  // namespace broadband_dp

#endif  // BROADBAND_DP_EPSILON_H_
