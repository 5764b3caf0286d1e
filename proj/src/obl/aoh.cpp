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

#include "obl/aoh.h"

#include "obl/util.h"

namespace obl {

void Aoh::AddObservation(const std::string& obs) {
  OBL_CHECK(player_ >= 0, UsageError, "Aoh used before construction");
  key_ += ";o=" + EscapeToken(obs);
  ++length_;
}

void Aoh::AddAction(int action, bool visible) {
  OBL_CHECK(length_ > 0, UsageError, "action recorded before any observation");
  key_ += ";a=";
  key_ += visible ? std::to_string(action) : "h";
}

Aoh AohOfTrajectory(const DecPomdp& env, const Trajectory& traj, int player) {
  OBL_CHECK(player >= 0 && player < env.NumPlayers(), UsageError,
            "player out of range");
  Aoh aoh(player);
  for (int i = 0; i < traj.Length(); ++i) {
    const auto& step = traj.steps[i];
    aoh.AddObservation(env.Observation(*step.state, player));
    if (step.action < 0) continue;
    int actor = env.ActingPlayer(*step.state);
    bool visible = actor == player || env.ActionVisibleTo(*step.state, actor, player);
    aoh.AddAction(step.action, visible);
  }
  return aoh;
}

int PlayerOfAohKey(const std::string& key) {
  OBL_CHECK(key.size() >= 2 && key[0] == 'p', UsageError,
            "not a history key: " + key);
  auto semi = key.find(';');
  return std::stoi(key.substr(1, semi == std::string::npos ? std::string::npos
                                                           : semi - 1));
}

}  // namespace obl
