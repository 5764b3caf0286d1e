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

#ifndef OBL_RANDOM_GAME_H_
#define OBL_RANDOM_GAME_H_

#include <cstdint>

#include "obl/env.h"

namespace obl {

// A small dense turn-based game drawn from a seed, for stress tests that want
// many structurally different games instead of one handcrafted one. The seed
// fixes everything: state/action counts, horizon, initial and transition
// distributions, per-(state,action) rewards in [-1,1], per-player observation
// partitions, and whether players see each other's actions.
//
// Sizes stay tiny (2..6 states, 2..3 actions, horizon 2..4) so exact solvers
// run in microseconds per game.
EnvPtr MakeRandomGame(uint64_t seed);

}  // namespace obl

#endif  // OBL_RANDOM_GAME_H_
