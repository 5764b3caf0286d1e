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

#ifndef OBL_STAGE_GAME_H_
#define OBL_STAGE_GAME_H_

#include <string>
#include <vector>

#include "obl/env.h"

namespace obl {

// A one-shot simultaneous-move team game: every player picks an action, the
// team receives payoff(joint profile).
struct SimultaneousGame {
  std::string name;
  std::vector<int> action_counts;          // per player
  std::vector<double> payoffs;             // row-major over the joint profile
  double Payoff(const std::vector<int>& profile) const;
};

// Turns a simultaneous-move game into an equivalent turn-based one: players
// move one at a time in `order`, and nobody observes anything about earlier
// moves until the stage has completed (the conversion that preserves the
// original information structure). The team payoff is emitted on the last
// move.
EnvPtr ConvertSimultaneous(const SimultaneousGame& game, const std::vector<int>& order);

// The 2x2 coordination game with payoff matrix [[1,0],[0,1]].
SimultaneousGame CoordinationMatrixGame();

}  // namespace obl

#endif  // OBL_STAGE_GAME_H_
