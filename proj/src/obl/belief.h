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

#ifndef OBL_BELIEF_H_
#define OBL_BELIEF_H_

#include <string>
#include <utility>
#include <vector>

#include "obl/policy.h"
#include "obl/tree.h"

namespace obl {

// A distribution over enumerated histories, conditioned on one player's
// action-observation key.
struct BeliefDistribution {
  int group = -1;
  std::vector<std::pair<int, double>> support;  // (node id, prob), probs sum to 1

  // Samples a node id.
  int Sample(Rng& rng) const;
};

// The conditional distribution over histories given that the group's player
// observed this key, when play follows `reach` (as produced by ReachUnder for
// some base policy). Throws UnreachableHistoryError when the base policy
// assigns the key zero probability.
BeliefDistribution ExactBelief(const GameTree& tree,
                               const std::vector<TrembleReach>& reach, int group_id);

// Like ExactBelief, but at zero-probability keys it falls back to the
// tremble limit: keep the histories needing the fewest zero-probability
// policy steps, and weight each zero step as a uniform fumble over the legal
// set. Coincides with ExactBelief wherever that one is defined.
BeliefDistribution TrembleBelief(const GameTree& tree,
                                 const std::vector<TrembleReach>& reach, int group_id);

// Conditions only on consistency with the key: history weights keep the
// chance factors and drop the policy factors entirely.
BeliefDistribution GroundedBelief(const GameTree& tree, int group_id);

// All beliefs of one kind, serialized for inspection: entries keyed by the
// history key, values [[node id, encoded state, prob], ...].
std::string DumpBeliefsJson(const GameTree& tree, const Policy& pi0,
                            const std::string& kind);

}  // namespace obl

#endif  // OBL_BELIEF_H_
