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
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "obl/err.h"
#include "obl/verify.h"

namespace obl {

TEST_CASE("the suite registry is stable and duplicate free") {
  const std::vector<std::string> names = VerifySuiteNames();
  CHECK(names.size() == 6);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
  const std::set<std::string> expect = {
      "order-invariance",    "policy-improvement", "fixed-point-br-gap",
      "grounded-equivalence", "joint-aoh-value",   "softmax-value-bound"};
  CHECK(std::set<std::string>(names.begin(), names.end()) == expect);
}

TEST_CASE("every registered suite passes") {
  for (const std::string& name : VerifySuiteNames()) {
    CAPTURE(name);
    const VerificationReport r = RunVerifySuite(name, 12345);
    CHECK(r.suite == name);
    CHECK(r.pass);
    CHECK(r.instances > 0);
    CHECK(r.max_violation <= r.bound);
  }
}

TEST_CASE("a second seed draws different instances and still passes") {
  const VerificationReport a = RunVerifySuite("policy-improvement", 1);
  const VerificationReport b = RunVerifySuite("policy-improvement", 2);
  CHECK(a.pass);
  CHECK(b.pass);
  // Random games differ, so the observed worst slack should too.
  CHECK(a.max_violation != b.max_violation);
}

TEST_CASE("unknown suite names are usage errors") {
  CHECK_THROWS_AS(RunVerifySuite("no-such-suite", 1), UsageError);
  CHECK_THROWS_AS(RunVerifySuite("", 1), UsageError);
}

TEST_CASE("reports serialize with their verdict") {
  const VerificationReport r = RunVerifySuite("softmax-value-bound", 7);
  const auto doc = nlohmann::json::parse(VerifyReportJson(r));
  CHECK(doc["format"] == "obl.verify/1");
  CHECK(doc["suite"] == "softmax-value-bound");
  CHECK(doc["pass"].get<bool>() == r.pass);
  CHECK(doc["instances"].get<int>() == r.instances);
  CHECK(doc["max_violation"].get<double>() == doctest::Approx(r.max_violation));
  CHECK(doc["bound"].get<double>() == doctest::Approx(r.bound));
}

}  // namespace obl
