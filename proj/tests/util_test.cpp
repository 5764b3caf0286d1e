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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <set>
#include <string>

#include "obl/rng.h"
#include "obl/util.h"

namespace obl {

TEST_CASE("fnv1a matches reference vectors") {
  // Reference values computed from the published offset basis and prime.
  CHECK(Fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(Fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(Fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("hex hash is fixed width") {
  CHECK(HexHash(0) == "0000000000000000");
  CHECK(HexHash(0xdeadbeefull) == "00000000deadbeef");
  CHECK(HexHash(~0ull).size() == 16);
}

TEST_CASE("escaping keeps safe characters and round-trips structure") {
  CHECK(EscapeToken("abc_09:,+*.|()$<>-AZ") == "abc_09:,+*.|()$<>-AZ");
  CHECK(EscapeToken("a b") == "a%20b");
  CHECK(EscapeToken("a;b=c") == "a%3Bb%3Dc");
  CHECK(EscapeToken("%") == "%25");
  // Distinct inputs stay distinct after escaping.
  std::set<std::string> seen;
  std::vector<std::string> inputs = {"a;b", "a%3bb", "a=b", "a%b", "a%%b", ";", "%3b"};
  for (const auto& in : inputs) CHECK(seen.insert(EscapeToken(in)).second);
}

TEST_CASE("double formatting round-trips") {
  for (double v : {0.0, 1.0, -1.0, 0.1, 1.0 / 3.0, 1e-300, 12345.678901234567,
                   5.0, -10.0, 0.5000000000000001}) {
    std::string s = DoubleToString(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("child seeds differ by label and index") {
  std::set<uint64_t> seeds;
  for (uint64_t master : {1ull, 2ull, 99ull}) {
    for (const char* label : {"selfplay", "train", "eval"}) {
      CHECK(seeds.insert(ChildSeed(master, label)).second);
      for (uint64_t i = 0; i < 3; ++i) {
        CHECK(seeds.insert(ChildSeed(master, label, i)).second);
      }
    }
  }
  // Stable across calls.
  CHECK(ChildSeed(7, "x", 3) == ChildSeed(7, "x", 3));
}

TEST_CASE("rng basics") {
  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    double u = rng.Uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    int k = rng.UniformInt(7);
    CHECK(k >= 0);
    CHECK(k < 7);
  }
  // SampleIndex respects weights: zero weight is never drawn.
  Rng rng2(43);
  std::vector<double> w = {0.0, 2.0, 0.0, 1.0};
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < 3000; ++i) ++counts[rng2.SampleIndex(w)];
  CHECK(counts[0] == 0);
  CHECK(counts[2] == 0);
  CHECK(counts[1] > counts[3]);
}

TEST_CASE("file io round-trips") {
  std::string dir = "util_test_tmp";
  EnsureDir(dir);
  std::string path = JoinPath(dir, "blob.txt");
  WriteFileOrThrow(path, "hello\nworld\n");
  CHECK(FileExists(path));
  CHECK(ReadFileOrThrow(path) == "hello\nworld\n");
  std::remove(path.c_str());
  std::remove(dir.c_str());
}

}  // namespace obl
