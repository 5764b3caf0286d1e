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

#ifndef OBL_GROUNDED_REPORT_H_
#define OBL_GROUNDED_REPORT_H_

#include <cstdint>
#include <string>

#include "obl/env.h"
#include "obl/policy.h"

namespace obl {

// How much a policy knows about the cards it plays. Every play action lands
// in exactly one bucket, judged at the moment of the play from the actor's
// own information: hint masks sharpened by counting the cards visible to
// them (fireworks, discards, the partner's hand).
struct GroundedPlayReport {
  uint64_t episodes = 0;
  uint64_t plays = 0;
  uint64_t both = 0;
  uint64_t color_only = 0;
  uint64_t rank_only = 0;
  uint64_t none = 0;

  double frac_both() const { return plays ? static_cast<double>(both) / plays : 0.0; }
  double frac_color_only() const { return plays ? static_cast<double>(color_only) / plays : 0.0; }
  double frac_rank_only() const { return plays ? static_cast<double>(rank_only) / plays : 0.0; }
  double frac_none() const { return plays ? static_cast<double>(none) / plays : 0.0; }
};

// Rolls the policy out in self-play and classifies every play action. Only
// defined for the hanabi env; anything else throws UsageError.
GroundedPlayReport GroundedPlayEval(const DecPomdp& env, const Policy& policy,
                                    uint64_t episodes, uint64_t seed);

std::string GroundedReportJson(const GroundedPlayReport& r);

}  // namespace obl

#endif  // OBL_GROUNDED_REPORT_H_
