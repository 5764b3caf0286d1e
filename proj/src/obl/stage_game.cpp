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

#include "obl/stage_game.h"

#include <algorithm>
#include <memory>
#include <numeric>

namespace obl {

double SimultaneousGame::Payoff(const std::vector<int>& profile) const {
  std::size_t idx = 0;
  for (std::size_t p = 0; p < action_counts.size(); ++p) {
    idx = idx * action_counts[p] + profile[p];
  }
  return payoffs[idx];
}

namespace {

struct StageState final : public GameState {
  // Actions indexed by order position; -1 = not yet taken.
  std::vector<int> taken;
  int pos = 0;
  bool done = false;

  StatePtr Clone() const override { return std::make_unique<StageState>(*this); }

  std::string Encode() const override {
    std::string s = "stage|pos:" + std::to_string(pos) + "|acts:";
    for (std::size_t i = 0; i < taken.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(taken[i]);
    }
    s += done ? "|done" : "|live";
    return s;
  }
};

class ConvertedStageGame final : public DecPomdp {
 public:
  ConvertedStageGame(SimultaneousGame game, std::vector<int> order)
      : game_(std::move(game)), order_(std::move(order)) {
    int n = static_cast<int>(game_.action_counts.size());
    if (static_cast<int>(order_.size()) != n) {
      throw UsageError("conversion order must list every player exactly once");
    }
    std::vector<int> seen(n, 0);
    for (int p : order_) {
      if (p < 0 || p >= n || seen[p]++) {
        throw UsageError("conversion order must be a permutation of players");
      }
    }
    std::size_t want = 1;
    for (int c : game_.action_counts) want *= c;
    if (game_.payoffs.size() != want) {
      throw UsageError("payoff tensor size does not match action counts");
    }
  }

  std::string Name() const override { return game_.name; }
  int NumPlayers() const override { return static_cast<int>(order_.size()); }
  int MaxGameLength() const override { return NumPlayers(); }
  int NumDistinctActions() const override {
    return *std::max_element(game_.action_counts.begin(), game_.action_counts.end());
  }
  std::string ActionName(int action) const override {
    return "pick:" + std::to_string(action);
  }

  std::vector<WeightedState> InitialStates() const override {
    auto s = std::make_unique<StageState>();
    s->taken.assign(order_.size(), -1);
    std::vector<WeightedState> out;
    out.push_back({std::move(s), 1.0});
    return out;
  }

  bool IsTerminal(const GameState& s) const override { return Cast(s).done; }

  int ActingPlayer(const GameState& s) const override { return order_[Cast(s).pos]; }

  std::vector<int> LegalActions(const GameState& s) const override {
    std::vector<int> out(game_.action_counts[ActingPlayer(s)]);
    std::iota(out.begin(), out.end(), 0);
    return out;
  }

  double Reward(const GameState& s, int action) const override {
    const StageState& st = Cast(s);
    if (st.pos + 1 < static_cast<int>(order_.size())) return 0.0;
    return game_.Payoff(ProfileWith(st, action));
  }

  std::vector<WeightedState> NextStates(const GameState& s, int action) const override {
    auto next = std::make_unique<StageState>(Cast(s));
    next->taken[next->pos] = action;
    next->pos += 1;
    if (next->pos == static_cast<int>(order_.size())) next->done = true;
    std::vector<WeightedState> out;
    out.push_back({std::move(next), 1.0});
    return out;
  }

  std::string Observation(const GameState& s, int player) const override {
    const StageState& st = Cast(s);
    if (!st.done) return "stage";  // nothing observable mid-stage
    // Once the stage completes, everyone observes the full profile.
    std::string o = "profile:";
    std::vector<int> prof = ProfileWith(st, -2);
    for (std::size_t p = 0; p < prof.size(); ++p) {
      if (p) o += ",";
      o += std::to_string(prof[p]);
    }
    (void)player;
    return o;
  }

  bool ActionVisibleTo(const GameState& s, int actor, int viewer) const override {
    (void)s;
    return actor == viewer;
  }

  StatePtr DecodeState(const std::string& encoded) const override {
    auto s = std::make_unique<StageState>();
    std::size_t pos_at = encoded.find("pos:");
    std::size_t acts_at = encoded.find("|acts:");
    std::size_t tail = encoded.rfind('|');
    s->pos = std::stoi(encoded.substr(pos_at + 4, acts_at - pos_at - 4));
    std::string acts = encoded.substr(acts_at + 6, tail - acts_at - 6);
    s->taken.clear();
    std::size_t start = 0;
    while (start <= acts.size()) {
      std::size_t comma = acts.find(',', start);
      std::string item = acts.substr(start, comma == std::string::npos
                                                ? std::string::npos
                                                : comma - start);
      s->taken.push_back(std::stoi(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    s->done = encoded.substr(tail) == "|done";
    return s;
  }

  bool EnumerateCompletions(const GameState& anchor, int player,
                            std::vector<std::string>* out) const override {
    // Earlier moves in the stage are the hidden information; enumerate every
    // assignment of them.
    const StageState& st = Cast(anchor);
    (void)player;
    std::vector<StageState> frontier;
    frontier.push_back(st);
    for (int k = 0; k < st.pos; ++k) {
      std::vector<StageState> next;
      for (const StageState& f : frontier) {
        for (int a = 0; a < game_.action_counts[order_[k]]; ++a) {
          StageState g = f;
          g.taken[k] = a;
          next.push_back(g);
        }
      }
      frontier = std::move(next);
    }
    for (const StageState& f : frontier) out->push_back(f.Encode());
    return true;
  }

 private:
  static const StageState& Cast(const GameState& s) {
    return static_cast<const StageState&>(s);
  }

  // Joint profile in player order; `pending` (if >= 0) stands in for the
  // acting player's not-yet-applied action.
  std::vector<int> ProfileWith(const StageState& st, int pending) const {
    std::vector<int> prof(order_.size(), -1);
    for (std::size_t k = 0; k < order_.size(); ++k) {
      int a = st.taken[k];
      if (a < 0 && static_cast<int>(k) == st.pos && pending >= 0) a = pending;
      prof[order_[k]] = a;
    }
    return prof;
  }

  SimultaneousGame game_;
  std::vector<int> order_;
};

}  // namespace

EnvPtr ConvertSimultaneous(const SimultaneousGame& game, const std::vector<int>& order) {
  return std::make_unique<ConvertedStageGame>(game, order);
}

SimultaneousGame CoordinationMatrixGame() {
  SimultaneousGame g;
  g.name = "matrix_coord";
  g.action_counts = {2, 2};
  g.payoffs = {1.0, 0.0, 0.0, 1.0};
  return g;
}

}  // namespace obl
