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

#ifndef OBL_ROLLOUT_H_
#define OBL_ROLLOUT_H_

#include <cstdint>
#include <vector>

#include "obl/env.h"
#include "obl/policy.h"
#include "obl/rng.h"

namespace obl {

// One episode's return with `by_player[p]` acting for seat p, histories
// tracked incrementally so tabular policies see their canonical keys.
double RolloutReturn(const DecPomdp& env,
                     const std::vector<const Policy*>& by_player, Rng& rng);

// Mean self-play return over `episodes` seeded rollouts.
double MeanReturn(const DecPomdp& env, const Policy& policy, uint64_t episodes,
                  uint64_t seed);

}  // namespace obl

#endif  // OBL_ROLLOUT_H_
