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

#include "broadband_dp/epsilon.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace broadband_dp {

absl::StatusOr<Epsilon> Epsilon::Parse(absl::string_view text) {
  const absl::string_view trimmed = absl::StripAsciiWhitespace(text);
  if (trimmed.empty()) {
    return absl::InvalidArgumentError("epsilon: empty value");
  }
  const size_t dot = trimmed.find('.');
  const absl::string_view whole = trimmed.substr(0, dot);
  const absl::string_view frac =
      dot == absl::string_view::npos ? absl::string_view() : trimmed.substr(dot + 1);
  if (whole.empty() && frac.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon: not a decimal number: '", trimmed, "'"));
  }
  auto all_digits = [](absl::string_view s) {
    for (char c : s) {
      if (!absl::ascii_isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  if (!all_digits(whole) || !all_digits(frac)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon: not a plain decimal number: '", trimmed, "'"));
  }
  // Trailing zeros beyond the ninth digit carry no value.
  absl::string_view significant_frac = frac;
  while (significant_frac.size() > kFractionDigits &&
         significant_frac.back() == '0') {
    significant_frac.remove_suffix(1);
  }
  if (significant_frac.size() > kFractionDigits) {
    return absl::InvalidArgumentError(absl::StrCat(
        "epsilon: more than ", kFractionDigits, " fractional digits: '",
        trimmed, "'"));
  }
  constexpr int64_t kMax = std::numeric_limits<int64_t>::max();
  int64_t units = 0;
  for (char c : whole) {
    if (units > (kMax - (c - '0')) / 10) {
      return absl::OutOfRangeError(
          absl::StrCat("epsilon: value too large: '", trimmed, "'"));
    }
    units = units * 10 + (c - '0');
  }
  if (units > kMax / kUnitsPerOne) {
    return absl::OutOfRangeError(
        absl::StrCat("epsilon: value too large: '", trimmed, "'"));
  }
  units *= kUnitsPerOne;
  int64_t place = kUnitsPerOne / 10;
  for (char c : significant_frac) {
    units += (c - '0') * place;
    place /= 10;
  }
  return Epsilon(units);
}

absl::StatusOr<Epsilon> Epsilon::FromDouble(double value) {
  if (!std::isfinite(value) || value < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon: must be finite and nonnegative, got ", value));
  }
  const double scaled = std::round(value * static_cast<double>(kUnitsPerOne));
  if (scaled >= 9.2e18) {
    return absl::OutOfRangeError(absl::StrCat("epsilon: too large: ", value));
  }
  return Epsilon(static_cast<int64_t>(scaled));
}

double Epsilon::ToDouble() const {
  // Splitting keeps the result correctly rounded for values with few digits.
  const int64_t whole = units_ / kUnitsPerOne;
  const int64_t frac = units_ % kUnitsPerOne;
  return static_cast<double>(whole) +
         static_cast<double>(frac) / static_cast<double>(kUnitsPerOne);
}

std::string Epsilon::ToString() const {
  const bool negative = units_ < 0;
  // Magnitude as unsigned so INT64_MIN does not overflow.
  const uint64_t magnitude =
      negative ? uint64_t{0} - static_cast<uint64_t>(units_)
               : static_cast<uint64_t>(units_);
  std::string out = absl::StrCat(negative ? "-" : "", magnitude / kUnitsPerOne);
  uint64_t frac = magnitude % kUnitsPerOne;
  if (frac == 0) return out;
  std::string digits(kFractionDigits, '0');
  for (int i = kFractionDigits - 1; i >= 0; --i) {
    digits[i] = static_cast<char>('0' + frac % 10);
    frac /= 10;
  }
  while (!digits.empty() && digits.back() == '0') digits.pop_back();
  absl::StrAppend(&out, ".", digits);
  return out;
}

absl::StatusOr<Epsilon> Epsilon::Plus(Epsilon other) const {
  int64_t sum;
  if (__builtin_add_overflow(units_, other.units_, &sum)) {
    return absl::OutOfRangeError("epsilon: overflow in sum");
  }
  return Epsilon(sum);
}

absl::StatusOr<Epsilon> Epsilon::Minus(Epsilon other) const {
  int64_t diff;
  if (__builtin_sub_overflow(units_, other.units_, &diff)) {
    return absl::OutOfRangeError("epsilon: overflow in difference");
  }
  return Epsilon(diff);
}

}  // namespace broadband_dp
