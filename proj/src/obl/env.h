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

#ifndef OBL_ENV_H_
#define OBL_ENV_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "obl/err.h"
#include "obl/rng.h"

namespace obl {

// Opaque per-game state. Encode() must be canonical (equal states encode
// equally) and printable; it doubles as the hidden-completion fallback key.
class GameState {
 public:
  virtual ~GameState() = default;
  virtual std::unique_ptr<GameState> Clone() const = 0;
  virtual std::string Encode() const = 0;
};

using StatePtr = std::unique_ptr<GameState>;

// One entry of a finite successor (or initial-state) distribution.
struct WeightedState {
  StatePtr state;
  double prob;
};

// A bounded-length turn-based Dec-POMDP with team reward. One player acts per
// state; transitions and the initial state carry finite enumerable support so
// the same definition serves both exact enumeration and sampled play.
class DecPomdp {
 public:
  virtual ~DecPomdp() = default;

  virtual std::string Name() const = 0;
  virtual int NumPlayers() const = 0;
  // Hard bound on the number of env steps in any episode.
  virtual int MaxGameLength() const = 0;
  virtual double Discount() const { return 1.0; }
  virtual int NumDistinctActions() const = 0;
  virtual std::string ActionName(int action) const;

  // Full support of the initial-state distribution; probabilities sum to 1.
  virtual std::vector<WeightedState> InitialStates() const = 0;

  virtual bool IsTerminal(const GameState& s) const = 0;
  virtual int ActingPlayer(const GameState& s) const = 0;
  virtual std::vector<int> LegalActions(const GameState& s) const = 0;
  // Team reward emitted by taking `action` in `s`.
  virtual double Reward(const GameState& s, int action) const = 0;
  // Full support of the transition distribution ("step_support").
  virtual std::vector<WeightedState> NextStates(const GameState& s, int action) const = 0;

  // Per-player observation of a state. Deterministic function of the state.
  virtual std::string Observation(const GameState& s, int player) const = 0;

  // Whether the action taken at `s` shows up in `viewer`'s history record.
  // A player always sees their own actions; this governs the rest.
  virtual bool ActionVisibleTo(const GameState& s, int actor, int viewer) const {
    (void)s; (void)actor; (void)viewer;
    return true;
  }

  // Inverse of GameState::Encode.
  virtual StatePtr DecodeState(const std::string& encoded) const = 0;

  // --- Hidden-information projection -------------------------------------
  // Count-based belief models key their statistics on a per-player projection
  // of the state: everything the player cannot already deduce from their own
  // history. Defaults treat the full state encoding as the completion.

  virtual std::string HiddenCompletion(const GameState& s, int player) const {
    (void)player;
    return s.Encode();
  }

  // Enumerates every completion consistent with the player's history, given
  // any one state consistent with it. Returns false when not supported.
  virtual bool EnumerateCompletions(const GameState& anchor, int player,
                                    std::vector<std::string>* out) const {
    (void)anchor; (void)player; (void)out;
    return false;
  }

  // Rebuilds a full state from (anchor consistent with the history,
  // completion). Hidden parts not pinned by the completion (e.g. an unseen
  // deck order) are resampled from their exact conditional.
  virtual StatePtr StateForCompletion(const GameState& anchor, int player,
                                      const std::string& completion,
                                      Rng& rng) const {
    (void)anchor; (void)player; (void)rng;
    return DecodeState(completion);
  }
};

using EnvPtr = std::unique_ptr<DecPomdp>;

// One realized step: the state the action was taken in, the action, and the
// reward it emitted.
struct TrajectoryStep {
  StatePtr state;
  int action = -1;
  double reward = 0.0;
};

// A (possibly partial) realized play: all visited states in order. The final
// state carries action = -1 unless the trajectory continues past it.
struct Trajectory {
  std::vector<TrajectoryStep> steps;
  bool terminal = false;

  Trajectory() = default;
  Trajectory(const Trajectory& other) { *this = other; }
  Trajectory& operator=(const Trajectory& other) {
    if (this == &other) return *this;
    steps.clear();
    steps.reserve(other.steps.size());
    for (const auto& st : other.steps) {
      steps.push_back(TrajectoryStep{st.state->Clone(), st.action, st.reward});
    }
    terminal = other.terminal;
    return *this;
  }
  Trajectory(Trajectory&&) = default;
  Trajectory& operator=(Trajectory&&) = default;

  const GameState& Last() const { return *steps.back().state; }
  int Length() const { return static_cast<int>(steps.size()); }
  double TotalReward() const {
    double r = 0.0;
    for (const auto& st : steps) r += st.reward;
    return r;
  }
};

// Samples one successor according to the env's transition support.
StatePtr SampleNext(const DecPomdp& env, const GameState& s, int action, Rng& rng);
StatePtr SampleInitial(const DecPomdp& env, Rng& rng);

// Replays recorded actions through the env, checking that the recorded states
// and rewards are reproduced branch for branch. Throws on mismatch.
void CheckReplayConsistency(const DecPomdp& env, const Trajectory& traj);

// --- Environment configuration -------------------------------------------

struct MiniHanabiParams {
  int num_colors = 2;
  std::vector<int> ranks = {1, 1, 2};  // per-color rank multiset
  int hand_size = 2;
  int hint_tokens = 3;
  int life_tokens = 2;
  int max_turns = 20;
};

struct EnvConfig {
  std::string env;  // toy_game | matrix_coord | mini_hanabi | random
  MiniHanabiParams hanabi;
  // matrix_coord: which player moves first in the converted turn-based form.
  int matrix_first_mover = 0;
  // random: the generator seed.
  uint64_t random_seed = 1;

  // Canonical key=value serialization with every default materialized; its
  // FNV-1a hash identifies the env in artifacts.
  std::string Canonical() const;
  std::string Hash() const;
};

// Parses the documented key=value config format ('#' comments, blank lines
// ignored). Unknown keys are errors.
EnvConfig ParseEnvConfig(const std::string& text);
EnvConfig ParseEnvConfigFile(const std::string& path);

// Builds an env from a validated config. Throws UsageError on bad params.
EnvPtr BuildEnv(const EnvConfig& config);

// Convenience: preset by name with default params.
EnvConfig PresetConfig(const std::string& name);

}  // namespace obl

#endif  // OBL_ENV_H_
