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

#ifndef OBL_ARTIFACT_H_
#define OBL_ARTIFACT_H_

#include <string>

#include "json.hpp"
#include "obl/err.h"
#include "obl/util.h"

namespace obl {

// Reads a versioned json artifact and checks its format tag. Parse failures
// surface as ArtifactMismatchError so callers can tell them from io trouble.
inline nlohmann::json LoadArtifact(const std::string& path, const char* format) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFileOrThrow(path));
  } catch (const nlohmann::json::exception& e) {
    throw ArtifactMismatchError(path + ": " + e.what());
  }
  OBL_CHECK(doc.value("format", "") == format, ArtifactMismatchError,
            path + ": expected format " + format);
  return doc;
}

// `expect` empty skips the check.
inline void CheckEnvBinding(const nlohmann::json& doc, const std::string& path,
                            const std::string& expect) {
  if (expect.empty()) return;
  std::string got = doc.value("env", "");
  OBL_CHECK(got == expect, ArtifactMismatchError,
            path + ": built for env " + got + ", expected " + expect);
}

}  // namespace obl

#endif  // OBL_ARTIFACT_H_
