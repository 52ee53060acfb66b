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

#ifndef BROADBAND_DP_TOOLS_MANIFEST_H_
#define BROADBAND_DP_TOOLS_MANIFEST_H_

#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace broadband_dp {

inline constexpr char kToolVersion[] = "0.1.0";

// Lowercase hex SHA-256 of a string or a file's bytes.
std::string Sha256Hex(absl::string_view bytes);
absl::StatusOr<std::string> FileSha256(const std::string& path);

// Everything needed to rerun a command and check its outputs. Holds no
// timestamps, so equal runs write equal manifests.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> argv;  // without the program name
  std::map<std::string, std::string> parameters;
  std::map<std::string, std::string> input_digests;   // path -> sha256
  std::map<std::string, std::string> output_digests;  // path -> sha256
  std::string tool_version = kToolVersion;
};

std::string ManifestPathFor(const std::string& output_path);

std::string SerializeManifest(const RunManifest& manifest);
absl::StatusOr<RunManifest> ParseManifest(absl::string_view json);

absl::Status WriteManifest(const std::string& path,
                           const RunManifest& manifest);
absl::StatusOr<RunManifest> ReadManifest(const std::string& path);

}  // namespace broadband_dp

#endif  // BROADBAND_DP_TOOLS_MANIFEST_H_
