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

#include "manifest.h"

#include <openssl/evp.h>

#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "broadband_dp/csv_io.h"
#include "json.hpp"

namespace broadband_dp {

using nlohmann::json;

std::string Sha256Hex(absl::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
             nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

absl::StatusOr<std::string> FileSha256(const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  return Sha256Hex(*content);
}

std::string ManifestPathFor(const std::string& output_path) {
  return absl::StrCat(output_path, ".manifest.json");
}

std::string SerializeManifest(const RunManifest& manifest) {
  json doc = {
      {"tool", "bbdp"},
      {"version", manifest.tool_version},
      {"subcommand", manifest.subcommand},
      {"argv", manifest.argv},
      {"parameters", manifest.parameters},
      {"inputs", manifest.input_digests},
      {"outputs", manifest.output_digests},
  };
  return doc.dump(2) + "\n";
}

absl::StatusOr<RunManifest> ParseManifest(absl::string_view text) {
  try {
    const json doc = json::parse(text.begin(), text.end());
    RunManifest manifest;
    manifest.tool_version = doc.at("version").get<std::string>();
    manifest.subcommand = doc.at("subcommand").get<std::string>();
    manifest.argv = doc.at("argv").get<std::vector<std::string>>();
    manifest.parameters =
        doc.at("parameters").get<std::map<std::string, std::string>>();
    manifest.input_digests =
        doc.at("inputs").get<std::map<std::string, std::string>>();
    manifest.output_digests =
        doc.at("outputs").get<std::map<std::string, std::string>>();
    return manifest;
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed manifest: ", e.what()));
  }
}

absl::Status WriteManifest(const std::string& path,
                           const RunManifest& manifest) {
  return WriteFile(path, SerializeManifest(manifest));
}

absl::StatusOr<RunManifest> ReadManifest(const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  absl::StatusOr<RunManifest> manifest = ParseManifest(*content);
  if (!manifest.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", manifest.status().message()));
  }
  return manifest;
}

}  // namespace broadband_dp
