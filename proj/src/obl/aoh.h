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

#ifndef OBL_AOH_H_
#define OBL_AOH_H_

#include <string>

#include "obl/env.h"

namespace obl {

// One player's action-observation history, kept as a canonical printable key.
// The key is what policies, beliefs and reports are addressed by, so its
// format is stable:
//
//   p<i>;o=<obs>;a=<tok>;o=<obs>;a=<tok>; ... ;o=<obs>
//
// It always ends with the latest observation. <tok> is the action id when the
// player saw the action (their own, or a public one) and "h" when they only
// saw that a turn elapsed. Observations are percent-escaped, so ';' and '='
// cannot appear unescaped inside them and the key parses unambiguously.
class Aoh {
 public:
  Aoh() = default;
  explicit Aoh(int player) : player_(player), key_("p" + std::to_string(player)) {}

  void AddObservation(const std::string& obs);
  // `visible` false records only that some action happened.
  void AddAction(int action, bool visible);

  const std::string& Key() const { return key_; }
  int player() const { return player_; }
  // Number of observations recorded so far.
  int Length() const { return length_; }

 private:
  int player_ = -1;
  std::string key_;
  int length_ = 0;
};

// Replays a trajectory from the start and accumulates `player`'s history.
Aoh AohOfTrajectory(const DecPomdp& env, const Trajectory& traj, int player);

// The player index a canonical key belongs to.
int PlayerOfAohKey(const std::string& key);

}  // namespace obl

#endif  // OBL_AOH_H_
