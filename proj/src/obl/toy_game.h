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

#ifndef OBL_TOY_GAME_H_
#define OBL_TOY_GAME_H_

#include "obl/env.h"

namespace obl {

// Two-step signaling game. A pet (cat or dog) is drawn uniformly and shown to
// the first player only. The first player either toggles a light the partner
// can see (no reward), bails out for +1 ending the episode, or pays -5 to
// reveal the pet. The second player then bails for +0.5 or guesses the pet:
// +10 if right, -10 if wrong. Rewards are shared.
//
// Action ids: 0 light-on, 1 light-off, 2 bail, 3 reveal (first player);
//             4 bail, 5 guess-cat, 6 guess-dog (second player).
EnvPtr MakeToyGame();

constexpr int kToyLightOn = 0;
constexpr int kToyLightOff = 1;
constexpr int kToyAliceBail = 2;
constexpr int kToyReveal = 3;
constexpr int kToyBobBail = 4;
constexpr int kToyGuessCat = 5;
constexpr int kToyGuessDog = 6;

}  // namespace obl

#endif  // OBL_TOY_GAME_H_
