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

#include "obl/toy_game.h"

#include <memory>
#include <string>
#include <vector>

namespace obl {
namespace {

enum class Phase { kFirst, kSecond, kDone };

struct ToyState final : public GameState {
  int pet = 0;  // 0 = cat, 1 = dog
  Phase phase = Phase::kFirst;
  bool light_on = false;
  bool revealed = false;

  StatePtr Clone() const override { return std::make_unique<ToyState>(*this); }

  std::string Encode() const override {
    std::string s = "toy|pet:";
    s += (pet == 0 ? "cat" : "dog");
    s += "|phase:";
    s += (phase == Phase::kFirst ? "1" : phase == Phase::kSecond ? "2" : "end");
    s += "|light:";
    s += (light_on ? "on" : "off");
    s += "|rev:";
    s += (revealed ? "1" : "0");
    return s;
  }
};

class ToyGame final : public DecPomdp {
 public:
  std::string Name() const override { return "toy_game"; }
  int NumPlayers() const override { return 2; }
  int MaxGameLength() const override { return 2; }
  int NumDistinctActions() const override { return 7; }

  std::string ActionName(int action) const override {
    switch (action) {
      case kToyLightOn: return "light-on";
      case kToyLightOff: return "light-off";
      case kToyAliceBail: return "bail";
      case kToyReveal: return "reveal";
      case kToyBobBail: return "bail";
      case kToyGuessCat: return "guess-cat";
      case kToyGuessDog: return "guess-dog";
      default: return "?";
    }
  }

  std::vector<WeightedState> InitialStates() const override {
    std::vector<WeightedState> out;
    for (int pet = 0; pet < 2; ++pet) {
      auto s = std::make_unique<ToyState>();
      s->pet = pet;
      out.push_back({std::move(s), 0.5});
    }
    return out;
  }

  bool IsTerminal(const GameState& s) const override {
    return Cast(s).phase == Phase::kDone;
  }

  int ActingPlayer(const GameState& s) const override {
    return Cast(s).phase == Phase::kFirst ? 0 : 1;
  }

  std::vector<int> LegalActions(const GameState& s) const override {
    if (Cast(s).phase == Phase::kFirst) {
      return {kToyLightOn, kToyLightOff, kToyAliceBail, kToyReveal};
    }
    return {kToyBobBail, kToyGuessCat, kToyGuessDog};
  }

  double Reward(const GameState& s, int action) const override {
    const ToyState& ts = Cast(s);
    switch (action) {
      case kToyLightOn:
      case kToyLightOff: return 0.0;
      case kToyAliceBail: return 1.0;
      case kToyReveal: return -5.0;
      case kToyBobBail: return 0.5;
      case kToyGuessCat: return ts.pet == 0 ? 10.0 : -10.0;
      case kToyGuessDog: return ts.pet == 1 ? 10.0 : -10.0;
      default: throw UsageError("toy_game: bad action");
    }
  }

  std::vector<WeightedState> NextStates(const GameState& s, int action) const override {
    auto next = std::make_unique<ToyState>(Cast(s));
    if (Cast(s).phase == Phase::kFirst) {
      switch (action) {
        case kToyLightOn:
          next->light_on = true;
          next->phase = Phase::kSecond;
          break;
        case kToyLightOff:
          next->light_on = false;
          next->phase = Phase::kSecond;
          break;
        case kToyAliceBail:
          next->phase = Phase::kDone;
          break;
        case kToyReveal:
          next->revealed = true;
          next->phase = Phase::kSecond;
          break;
        default: throw UsageError("toy_game: bad action");
      }
    } else {
      next->phase = Phase::kDone;
    }
    std::vector<WeightedState> out;
    out.push_back({std::move(next), 1.0});
    return out;
  }

  std::string Observation(const GameState& s, int player) const override {
    const ToyState& ts = Cast(s);
    if (player == 0) {
      std::string o = "pet:";
      o += (ts.pet == 0 ? "cat" : "dog");
      if (ts.phase != Phase::kFirst) {
        o += ts.revealed ? "|rev" : (ts.light_on ? "|light:on" : "|light:off");
      }
      if (ts.phase == Phase::kDone) o += "|end";
      return o;
    }
    // Second player sees only the outcome of the first move: the light's
    // final state, or the pet once revealed.
    switch (ts.phase) {
      case Phase::kFirst: return "start";
      case Phase::kSecond:
      case Phase::kDone: {
        std::string o;
        if (ts.revealed) {
          o = std::string("pet:") + (ts.pet == 0 ? "cat" : "dog");
        } else {
          o = ts.light_on ? "light:on" : "light:off";
        }
        if (ts.phase == Phase::kDone) o += "|end";
        return o;
      }
    }
    return "?";
  }

  bool ActionVisibleTo(const GameState& s, int actor, int viewer) const override {
    (void)s;
    return actor == viewer;
  }

  StatePtr DecodeState(const std::string& encoded) const override {
    auto s = std::make_unique<ToyState>();
    s->pet = encoded.find("pet:cat") != std::string::npos ? 0 : 1;
    if (encoded.find("phase:1") != std::string::npos) s->phase = Phase::kFirst;
    else if (encoded.find("phase:2") != std::string::npos) s->phase = Phase::kSecond;
    else s->phase = Phase::kDone;
    s->light_on = encoded.find("light:on") != std::string::npos;
    s->revealed = encoded.find("rev:1") != std::string::npos;
    return s;
  }

  bool EnumerateCompletions(const GameState& anchor, int player,
                            std::vector<std::string>* out) const override {
    const ToyState& ts = Cast(anchor);
    std::string want = Observation(anchor, player);
    for (int pet = 0; pet < 2; ++pet) {
      ToyState variant = ts;
      variant.pet = pet;
      if (Observation(variant, player) == want) out->push_back(variant.Encode());
    }
    return true;
  }

 private:
  static const ToyState& Cast(const GameState& s) {
    return static_cast<const ToyState&>(s);
  }
};

}  // namespace

EnvPtr MakeToyGame() { return std::make_unique<ToyGame>(); }

}  // namespace obl
