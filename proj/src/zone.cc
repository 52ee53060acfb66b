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

#include "broadband_dp/zone.h"

#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace broadband_dp {

absl::StatusOr<ZoneId> ZoneId::Parse(absl::string_view text) {
  bool valid = text.size() == 5;
  for (char c : text) {
    valid = valid && absl::ascii_isdigit(static_cast<unsigned char>(c));
  }
  if (!valid) {
    return absl::InvalidArgumentError(
        absl::StrCat("zip code must be five digits, got '", text, "'"));
  }
  return ZoneId(std::string(text));
}

}  // namespace broadband_dp
