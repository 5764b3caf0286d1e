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

#ifndef OBL_SOLVER_H_
#define OBL_SOLVER_H_

#include <map>
#include <string>
#include <vector>

#include "obl/belief.h"
#include "obl/policy.h"
#include "obl/tree.h"

namespace obl {

enum class TieBreak {
  kLowestIndex,   // deterministic: smallest action id among exact maxima
  kSeededRandom,  // uniform among exact maxima, seeded per history key
};

enum class BeliefMode {
  kCounterfactual,  // condition on the base policy's play probabilities
  kGrounded,        // condition on consistency only (chance factors alone)
};

struct SolveOptions {
  double temperature = 0.0;  // 0 selects the argmax
  TieBreak tie_break = TieBreak::kLowestIndex;
  uint64_t tie_seed = 0;
  // Nonzero: permute the within-depth work order. Results must not depend on
  // it; the stress suites verify exactly that.
  uint64_t shuffle_seed = 0;
  BeliefMode belief_mode = BeliefMode::kCounterfactual;
};

struct ValueResult {
  double joint = 0.0;               // expected episode return from the deal
  std::vector<double> node_value;   // expected return to go, per history
};

// Expected values when every actor follows `policy`.
ValueResult PolicyValue(const GameTree& tree, const Policy& policy);

// Expected values when the actor at each history follows by_player[actor].
ValueResult JointValue(const GameTree& tree, const std::vector<const Policy*>& by_player);

// Boltzmann distribution over q at the given temperature; temperature 0 puts
// all mass on one argmax entry, chosen per `tie`. `rng` is only consulted for
// kSeededRandom.
std::vector<double> SoftmaxDist(const std::vector<double>& q, double temperature,
                                TieBreak tie, Rng* rng);

struct GroupQ {
  std::vector<double> q;  // aligned with the group's legal set
  bool trembled = false;  // belief needed the zero-probability fallback
  int num_ties = 1;       // exact argmax tie count
};

struct OblResult {
  Policy policy;
  std::vector<double> value;  // of the output policy, per history
  double joint = 0.0;
  std::map<std::string, GroupQ> q;  // per acting history key
  uint64_t trembled_groups = 0;
};

// One application of the counterfactual-belief operator: condition each
// actor's belief on play having followed `pi0`, evaluate each action by the
// value of the policy under construction (resolved backward, deepest turns
// first), and pick actions by softmax. Keys `pi0` never reaches get the
// tremble-limit belief.
OblResult OblOperator(const GameTree& tree, const Policy& pi0, const SolveOptions& opts);

// Applies the operator `levels` times starting from `pi0`; element k of the
// result is level k+1.
std::vector<OblResult> OblHierarchy(const GameTree& tree, const Policy& pi0,
                                    int levels, const SolveOptions& opts);

// Deviation values at every acting key of every player when beliefs follow
// `pi0` and play continues under the fixed `pi1`.
struct CounterfactualResult {
  std::map<std::string, GroupQ> q;
  std::vector<double> pi1_value;  // per history
};
CounterfactualResult CounterfactualQ(const GameTree& tree, const Policy& pi0,
                                     const Policy& pi1);

// Exact best response of `player` against everyone else following `partner`.
// Beliefs condition on the partner's decisions only; the responder's own past
// actions are pinned by their history.
struct BestResponseResult {
  Policy policy;              // entries for `player`'s acting keys only
  double joint = 0.0;         // value of (response, partner) from the deal
  std::vector<double> value;  // per history under that pair
};
BestResponseResult BestResponse(const GameTree& tree, const Policy& partner,
                                int player, const SolveOptions& opts);

// Iterated best response from a uniform base: level 0 is uniform everywhere,
// level k plays each role's best response to level k-1. Returns levels 0..k.
std::vector<Policy> KLevelHierarchy(const GameTree& tree, int levels,
                                    const SolveOptions& opts);

// Uniform over the legal set at every acting key, materialized.
Policy UniformPolicy(const GameTree& tree);

}  // namespace obl

#endif  // OBL_SOLVER_H_
