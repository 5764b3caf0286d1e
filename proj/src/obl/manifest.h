// Copyright 2026 The obl-toolkit Authors
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

#ifndef OBL_MANIFEST_H_
#define OBL_MANIFEST_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace obl {

inline constexpr char kToolVersion[] = "0.1.0";

// What a run did and from what: enough to re-run it bit for bit (seeds plus
// input hashes) and to audit what it produced. The wall clock is the one
// field that varies between identical runs.
struct RunManifest {
  std::string command;
  std::string tool_version = kToolVersion;
  std::string env_config_hash;
  std::map<std::string, uint64_t> seeds;         // stage label -> child seed
  std::map<std::string, std::string> inputs;     // path -> content hash
  std::vector<std::string> outputs;              // paths written by the run
  double wall_clock_sec = 0.0;
  std::map<std::string, std::string> notes;
};

std::string ManifestJson(const RunManifest& m);
void SaveManifest(const RunManifest& m, const std::string& path);

// Content hash of a file on disk, as recorded in `inputs`.
std::string HashFileContents(const std::string& path);

}  // namespace obl

#endif  // OBL_MANIFEST_H_
