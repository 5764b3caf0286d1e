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

#ifndef OBL_VERIFY_H_
#define OBL_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

namespace obl {

// Outcome of one property suite: `instances` checks ran, the worst observed
// slack consumption was `max_violation`, and anything at or below `bound`
// passes. Violations are signed; a comfortably negative maximum means the
// property held with room to spare.
struct VerificationReport {
  std::string suite;
  int instances = 0;
  double max_violation = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string detail;
};

// The registered suites:
//   order-invariance     solver output is independent of within-depth work order
//   policy-improvement   one operator application cannot lose more than the
//                        softmax entropy bonus: J(out) >= J(base) - e*T*t_max
//   fixed-point-br-gap   at an iterated fixed point, no history admits a best
//                        response better than e*T*(t_max - t) over the policy
//   grounded-equivalence under a base policy that ignores private state, the
//                        counterfactual and grounded operators coincide
//   joint-aoh-value      summing values over histories and over information
//                        groups weighted by exact beliefs gives the same number
//   softmax-value-bound  softmax-expected value trails the max by at most e*T
std::vector<std::string> VerifySuiteNames();

VerificationReport RunVerifySuite(const std::string& suite, uint64_t seed);

std::string VerifyReportJson(const VerificationReport& r);

}  // namespace obl

#endif  // OBL_VERIFY_H_
