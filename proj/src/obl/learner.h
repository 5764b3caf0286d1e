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

#ifndef OBL_LEARNER_H_
#define OBL_LEARNER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "obl/count_belief.h"
#include "obl/env.h"
#include "obl/policy.h"
#include "obl/selfplay.h"
#include "obl/tree.h"

namespace obl {

// Shared knobs for the two sampled operator learners. A learning rate of 0
// means per-pair harmonic steps (1/n on the n-th update of a (key, action)
// pair), which averages the sampled targets exactly.
struct LearnerOptions {
  uint64_t episodes = 200000;
  double lr = 0.0;
  // Behavior exploration (only the belief-sampled learner explores; the other
  // one's behavior is the fixed base policy).
  double eps_start = 1.0;
  double eps_end = 0.1;
  double eps_anneal_frac = 0.5;
  // Fictitious rollouts always stop at one of the actor's own decision points
  // (or terminal); this forces at least so many fictitious steps first, with
  // every seat inside the window following the greedy snapshot. 0 keeps the
  // default: stop at the actor's next turn.
  int bootstrap_steps = 0;
  uint64_t replay_capacity = 1024;
  int batch_size = 4;
  uint64_t sync_interval = 10;  // episodes between value-snapshot refreshes
  uint64_t seed = 1;
  // Cheap invariants on every fictitious sample (observation and legal-set
  // match against the real state). Leave on unless profiling says otherwise.
  bool check_fictitious_consistency = true;
  // Start from an existing table instead of zeros (e.g. the previous level).
  const QTable* warm_start = nullptr;
  // Curve options. Exact greedy evaluation when a tree is given, otherwise a
  // seeded self-play estimate over `eval_episodes` rollouts.
  uint64_t eval_interval = 0;
  const GameTree* eval_tree = nullptr;
  uint64_t eval_episodes = 500;
  const Policy* oracle = nullptr;
  uint64_t oracle_min_visits = 1000;
};

struct LearnerResult {
  QTable q;
  Policy greedy;
  std::vector<CurvePoint> curve;
  double mean_reuse = 0.0;
  uint64_t generations = 0;  // value-snapshot refreshes performed
  // Per-depth fraction of behavior decisions whose episode prefix was still
  // greedy-consistent (base-policy behavior drifts off the learned policy's
  // reachable set as depth grows; this quantifies how fast).
  std::vector<double> on_policy_fraction;
};

// Learns the operator target with the base policy as behavior: every seat
// plays `pi0`, so decision histories arrive exactly with the base policy's
// distribution and no belief model is needed. Targets come from resimulating
// the real env forward from the real state, everyone following the greedy
// snapshot until the actor's next turn.
LearnerResult QOblTrain(const DecPomdp& env, const Policy& pi0,
                        const LearnerOptions& opts);

// Learns the same target from a fitted belief model instead: behavior is
// epsilon-greedy on the policy being learned, and each decision's target
// rolls out from a state resampled at the actor's history. The partner's
// fictitious history is their real prefix extended with fictitious records.
LearnerResult LbOblTrain(const DecPomdp& env, const CountBeliefModel& belief,
                         const LearnerOptions& opts);

// Largest total-variation gap between the table's greedy policy and `oracle`
// across keys with at least `min_visits` recorded updates. Negative when no
// key qualifies.
double OracleDistance(const QTable& q, const Policy& oracle,
                      uint64_t min_visits);

}  // namespace obl

#endif  // OBL_LEARNER_H_
