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

#ifndef OBL_SELFPLAY_H_
#define OBL_SELFPLAY_H_

#include <cstdint>
#include <vector>

#include "obl/env.h"
#include "obl/policy.h"
#include "obl/tree.h"

namespace obl {

// One learning-curve row. `oracle_distance` is negative when no reference
// policy was supplied.
struct CurvePoint {
  uint64_t episode = 0;
  double eval = 0.0;
  double oracle_distance = -1.0;
};

// Independent tabular Q-learning, both seats updating one shared table (keys
// embed the seat, so the entries never collide). Exploration is epsilon-greedy
// with a linear decay over the first `eps_anneal_frac` of the run; fresh
// entries draw optimistic values so untried actions stay attractive early.
struct SelfplayOptions {
  uint64_t episodes = 200000;
  double lr = 0.1;
  double eps_start = 1.0;
  double eps_end = 0.05;
  double eps_anneal_frac = 0.5;
  double init_lo = 10.0;
  double init_hi = 11.0;
  uint64_t seed = 1;
  const QTable* warm_start = nullptr;   // start from this table, not fresh
  uint64_t eval_interval = 0;           // 0 disables the curve
  const GameTree* eval_tree = nullptr;  // exact greedy evaluation when set
  uint64_t eval_episodes = 500;         // sampled evaluation size otherwise
};

struct SelfplayResult {
  QTable q;
  Policy greedy;
  std::vector<CurvePoint> curve;
};

SelfplayResult SelfplayTrain(const DecPomdp& env, const SelfplayOptions& opts);

// Linear decay from start to end over the first `frac` of `total`, flat after.
double EpsilonAt(uint64_t episode, uint64_t total, double start, double end,
                 double frac);

}  // namespace obl

#endif  // OBL_SELFPLAY_H_
