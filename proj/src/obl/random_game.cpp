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

#include "obl/random_game.h"

#include <sstream>
#include <string>
#include <vector>

namespace obl {
namespace {

struct RandomGameState final : public GameState {
  int s = 0;
  int t = 0;

  StatePtr Clone() const override { return std::make_unique<RandomGameState>(*this); }
  std::string Encode() const override {
    return "rg|s:" + std::to_string(s) + "|t:" + std::to_string(t);
  }
};

class RandomGame final : public DecPomdp {
 public:
  explicit RandomGame(uint64_t seed) : seed_(seed) {
    Rng rng(seed);
    num_states_ = 2 + rng.UniformInt(5);
    num_actions_ = 2 + rng.UniformInt(2);
    horizon_ = 2 + rng.UniformInt(3);
    num_players_ = 1 + rng.UniformInt(2);
    public_actions_ = rng.UniformInt(2) == 1;

    initial_ = RandomDist(rng, num_states_);
    transition_.resize(num_states_);
    reward_.resize(num_states_);
    for (int s = 0; s < num_states_; ++s) {
      transition_[s].resize(num_actions_);
      reward_[s].resize(num_actions_);
      for (int a = 0; a < num_actions_; ++a) {
        transition_[s][a] = RandomDist(rng, num_states_);
        reward_[s][a] = rng.Uniform(-1.0, 1.0);
      }
    }
    obs_cell_.resize(num_players_);
    for (int p = 0; p < num_players_; ++p) {
      int cells = 1 + rng.UniformInt(num_states_);
      obs_cell_[p].resize(num_states_);
      for (int s = 0; s < num_states_; ++s) obs_cell_[p][s] = rng.UniformInt(cells);
    }
  }

  std::string Name() const override { return "random_game:" + std::to_string(seed_); }
  int NumPlayers() const override { return num_players_; }
  int MaxGameLength() const override { return horizon_; }
  int NumDistinctActions() const override { return num_actions_; }

  std::vector<WeightedState> InitialStates() const override {
    std::vector<WeightedState> out;
    for (int s = 0; s < num_states_; ++s) {
      auto st = std::make_unique<RandomGameState>();
      st->s = s;
      out.push_back(WeightedState{std::move(st), initial_[s]});
    }
    return out;
  }

  bool IsTerminal(const GameState& s) const override {
    return Cast(s).t >= horizon_;
  }

  int ActingPlayer(const GameState& s) const override {
    return Cast(s).t % num_players_;
  }

  std::vector<int> LegalActions(const GameState& s) const override {
    (void)s;
    std::vector<int> legal(num_actions_);
    for (int a = 0; a < num_actions_; ++a) legal[a] = a;
    return legal;
  }

  double Reward(const GameState& s, int action) const override {
    return reward_[Cast(s).s][action];
  }

  std::vector<WeightedState> NextStates(const GameState& s, int action) const override {
    const auto& st = Cast(s);
    std::vector<WeightedState> out;
    for (int ns = 0; ns < num_states_; ++ns) {
      double p = transition_[st.s][action][ns];
      if (p <= 0.0) continue;
      auto n = std::make_unique<RandomGameState>();
      n->s = ns;
      n->t = st.t + 1;
      out.push_back(WeightedState{std::move(n), p});
    }
    return out;
  }

  std::string Observation(const GameState& s, int player) const override {
    const auto& st = Cast(s);
    std::ostringstream os;
    os << "ob" << obs_cell_[player][st.s] << "|t:" << st.t;
    if (st.t >= horizon_) os << "|end";
    return os.str();
  }

  bool ActionVisibleTo(const GameState& s, int actor, int viewer) const override {
    (void)s;
    return public_actions_ || actor == viewer;
  }

  StatePtr DecodeState(const std::string& encoded) const override {
    auto s_at = encoded.find("|s:");
    auto t_at = encoded.find("|t:");
    OBL_CHECK(encoded.rfind("rg|", 0) == 0 && s_at != std::string::npos &&
                  t_at != std::string::npos,
              UsageError, "not a random_game state: " + encoded);
    auto st = std::make_unique<RandomGameState>();
    st->s = std::stoi(encoded.substr(s_at + 3, t_at - s_at - 3));
    st->t = std::stoi(encoded.substr(t_at + 3));
    OBL_CHECK(st->s >= 0 && st->s < num_states_ && st->t >= 0 && st->t <= horizon_,
              UsageError, "random_game state out of range: " + encoded);
    return st;
  }

 private:
  static const RandomGameState& Cast(const GameState& s) {
    return static_cast<const RandomGameState&>(s);
  }

  static std::vector<double> RandomDist(Rng& rng, int n) {
    std::vector<double> out(n);
    double total = 0.0;
    for (double& x : out) {
      x = 0.05 + rng.Uniform();  // bounded away from zero, dense support
      total += x;
    }
    for (double& x : out) x /= total;
    return out;
  }

  uint64_t seed_;
  int num_states_;
  int num_actions_;
  int horizon_;
  int num_players_;
  bool public_actions_;
  std::vector<double> initial_;
  std::vector<std::vector<std::vector<double>>> transition_;
  std::vector<std::vector<double>> reward_;
  std::vector<std::vector<int>> obs_cell_;
};

}  // namespace

EnvPtr MakeRandomGame(uint64_t seed) {
  return std::make_unique<RandomGame>(seed);
}

}  // namespace obl
