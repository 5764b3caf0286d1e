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

#include "obl/rollout.h"

#include <utility>

#include "obl/aoh.h"
#include "obl/err.h"

namespace obl {

double RolloutReturn(const DecPomdp& env,
                     const std::vector<const Policy*>& by_player, Rng& rng) {
  OBL_CHECK(static_cast<int>(by_player.size()) == env.NumPlayers(), UsageError,
            "rollout needs one policy per seat");
  StatePtr s = SampleInitial(env, rng);
  std::vector<Aoh> aohs;
  aohs.reserve(by_player.size());
  for (int p = 0; p < env.NumPlayers(); ++p) {
    aohs.emplace_back(p);
    aohs[p].AddObservation(env.Observation(*s, p));
  }
  double total = 0.0;
  while (!env.IsTerminal(*s)) {
    int actor = env.ActingPlayer(*s);
    std::vector<int> legal = env.LegalActions(*s);
    auto probs = by_player[actor]->ProbsAt(aohs[actor].Key(), legal);
    int a = legal[rng.SampleIndex(probs)];
    total += env.Reward(*s, a);
    StatePtr next = SampleNext(env, *s, a, rng);
    for (int p = 0; p < env.NumPlayers(); ++p) {
      aohs[p].AddAction(a, env.ActionVisibleTo(*s, actor, p));
      aohs[p].AddObservation(env.Observation(*next, p));
    }
    s = std::move(next);
  }
  return total;
}

double MeanReturn(const DecPomdp& env, const Policy& policy, uint64_t episodes,
                  uint64_t seed) {
  OBL_CHECK(episodes > 0, UsageError, "mean return needs episodes > 0");
  Rng rng(seed);
  std::vector<const Policy*> seats(env.NumPlayers(), &policy);
  double sum = 0.0;
  for (uint64_t e = 0; e < episodes; ++e) sum += RolloutReturn(env, seats, rng);
  return sum / static_cast<double>(episodes);
}

}  // namespace obl
