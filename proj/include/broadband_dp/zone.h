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

#ifndef BROADBAND_DP_ZONE_H_
#define BROADBAND_DP_ZONE_H_

#include <compare>
#include <string>
#include "absl/strings/string_view.h"
#include <utility>

#include "absl/status/statusor.h"

namespace broadband_dp {

// A five-digit, zero-padded zip code.
class ZoneId {
 public:
  static absl::StatusOr<ZoneId> Parse(absl::string_view text);

  const std::string& str() const { return code_; }

  friend auto operator<=>(const ZoneId&, const ZoneId&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const ZoneId& zone) {
    return H::combine(std::move(h), zone.code_);
  }

 private:
  explicit ZoneId(std::string code) : code_(std::move(code)) {}

  std::string code_;
};

}  // namespace broadband_dp

#endif  // BROADBAND_DP_ZONE_H_
