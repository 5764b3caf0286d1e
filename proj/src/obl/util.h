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

#ifndef OBL_UTIL_H_
#define OBL_UTIL_H_

#include <cstdint>
#include <string>
#include <vector>

namespace obl {

// Stable 64-bit FNV-1a. Used for env-config hashes and artifact fingerprints;
// must not change across platforms or releases.
std::uint64_t Fnv1a64(const void* data, std::size_t len);
std::uint64_t Fnv1a64(const std::string& s);
std::string HexHash(std::uint64_t h);

// Percent-escapes characters outside [A-Za-z0-9_:,+*.|()$<>-] so observation
// tokens can be embedded in canonical history encodings and JSON keys.
std::string EscapeToken(const std::string& s);

std::string ReadFileOrThrow(const std::string& path);
void WriteFileOrThrow(const std::string& path, const std::string& content);
bool FileExists(const std::string& path);
void EnsureDir(const std::string& path);  // mkdir -p

// Shortest decimal form that round-trips a double. Keeps serialized artifacts
// byte-stable across runs.
std::string DoubleToString(double v);

std::string JoinPath(const std::string& a, const std::string& b);

}  // namespace obl

#endif  // OBL_UTIL_H_
