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

#include "obl/manifest.h"

#include <cmath>

#include "json.hpp"
#include "obl/util.h"

namespace obl {

std::string ManifestJson(const RunManifest& m) {
  nlohmann::json doc;
  doc["format"] = "obl.manifest/1";
  doc["command"] = m.command;
  doc["tool_version"] = m.tool_version;
  doc["env_config_hash"] = m.env_config_hash;
  doc["seeds"] = m.seeds;
  doc["inputs"] = m.inputs;
  doc["outputs"] = m.outputs;
  // Millisecond grain; the precise figure carries no information anyway.
  doc["wall_clock_sec"] = std::round(m.wall_clock_sec * 1000.0) / 1000.0;
  doc["notes"] = m.notes;
  return doc.dump(1) + "\n";
}

void SaveManifest(const RunManifest& m, const std::string& path) {
  WriteFileOrThrow(path, ManifestJson(m));
}

std::string HashFileContents(const std::string& path) {
  return HexHash(Fnv1a64(ReadFileOrThrow(path)));
}

}  // namespace obl
