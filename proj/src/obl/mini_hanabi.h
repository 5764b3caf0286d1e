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

#ifndef OBL_MINI_HANABI_H_
#define OBL_MINI_HANABI_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "obl/env.h"

namespace obl {

// Two-player scaled-down Hanabi. Cards have a color and a rank; the deck holds
// the configured rank multiset once per color. Players see the partner's hand
// but not their own. A turn is one of:
//   - play a slot: +1 reward if it is the next rank of its color (playing the
//     top rank of a color also regains a hint token), otherwise lose a life
//     and discard it;
//   - discard a slot (illegal while hint tokens are full): regain a hint;
//   - spend a hint token to name a color or rank in the partner's hand; the
//     partner learns exactly which slots match.
// After a play or discard the actor draws. Once the deck empties every player
// gets one final turn. The game also ends when all lives are gone (the final
// step then cancels the accumulated score, so the episode return is 0), when
// every color is complete, or after max_turns. Episode return equals the
// final score: one point per card played (zero on a bomb-out).
//
// Action ids: [0,H) play slot, [H,2H) discard slot, [2H,2H+C) hint color,
// [2H+C, 2H+C+R) hint rank, where H = hand size, C = colors, R = top rank.
class MiniHanabiEnv;

EnvPtr MakeMiniHanabi(const MiniHanabiParams& params);

struct HanabiCard {
  int color = 0;
  int rank = 0;  // 1-based
  bool operator==(const HanabiCard& o) const { return color == o.color && rank == o.rank; }
};

// What the hints received so far pin down about one of a player's own slots.
struct SlotKnowledge {
  bool color_known = false;
  bool rank_known = false;
};

class MiniHanabiEnv final : public DecPomdp {
 public:
  explicit MiniHanabiEnv(const MiniHanabiParams& params);

  std::string Name() const override { return "mini_hanabi"; }
  int NumPlayers() const override { return 2; }
  int MaxGameLength() const override { return params_.max_turns; }
  int NumDistinctActions() const override;
  std::string ActionName(int action) const override;

  std::vector<WeightedState> InitialStates() const override;
  bool IsTerminal(const GameState& s) const override;
  int ActingPlayer(const GameState& s) const override;
  std::vector<int> LegalActions(const GameState& s) const override;
  double Reward(const GameState& s, int action) const override;
  std::vector<WeightedState> NextStates(const GameState& s, int action) const override;
  std::string Observation(const GameState& s, int player) const override;
  StatePtr DecodeState(const std::string& encoded) const override;

  std::string HiddenCompletion(const GameState& s, int player) const override;
  bool EnumerateCompletions(const GameState& anchor, int player,
                            std::vector<std::string>* out) const override;
  StatePtr StateForCompletion(const GameState& anchor, int player,
                              const std::string& completion, Rng& rng) const override;

  // Direct sampling of a shuffled deal (cheaper than materializing the full
  // initial support during rollouts).
  StatePtr SampleInitialState(Rng& rng) const;

  SlotKnowledge KnowledgeFor(const GameState& s, int player, int slot) const;
  // Like KnowledgeFor but also counts cards: a color or rank is known when
  // every candidate left in the unseen pool (deck multiset minus fireworks,
  // discards and the partner's visible hand) that fits the slot's hint masks
  // agrees on it. Strictly refines the mask-only answer.
  SlotKnowledge DeducedKnowledge(const GameState& s, int player, int slot) const;
  int Score(const GameState& s) const;
  const MiniHanabiParams& params() const { return params_; }
  int TopRank() const { return top_rank_; }

 private:
  // Deck multiset minus everything `player` can see: fireworks, discards and
  // the partner's hand. The player's own cards stay in (they are unseen).
  std::map<std::pair<int, int>, int> UnseenPool(const GameState& s, int player) const;

  MiniHanabiParams params_;
  int top_rank_;
  std::vector<HanabiCard> full_deck_;  // one copy of the multiset, sorted
};

}  // namespace obl

#endif  // OBL_MINI_HANABI_H_
