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

#include "obl/mini_hanabi.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <numeric>
#include <sstream>

#include "obl/util.h"

namespace obl {
namespace {

std::string CardStr(const HanabiCard& c) {
  return "c" + std::to_string(c.color) + "r" + std::to_string(c.rank);
}

HanabiCard ParseCard(const std::string& s) {
  auto r = s.find('r');
  OBL_CHECK(s.size() >= 4 && s[0] == 'c' && r != std::string::npos,
            UsageError, "bad card token: " + s);
  HanabiCard c;
  c.color = std::stoi(s.substr(1, r - 1));
  c.rank = std::stoi(s.substr(r + 1));
  return c;
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  size_t pos = 0;
  while (true) {
    auto comma = s.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

struct Slot {
  HanabiCard card;
  int color_mask = 0;
  int rank_mask = 0;
};

struct MiniHanabiState final : public GameState {
  int turn = 0;
  int end_turn = -1;  // first turn index that is past the deck-out grace round
  int hints = 0;
  int lives = 0;
  std::vector<int> fireworks;            // highest rank played per color
  std::vector<HanabiCard> deck;          // next draw is the back
  std::vector<Slot> hands[2];
  std::vector<HanabiCard> discards;      // includes misplayed cards, in order

  StatePtr Clone() const override { return std::make_unique<MiniHanabiState>(*this); }

  std::string Encode() const override {
    std::ostringstream os;
    os << "mh|t:" << turn << "|end:" << end_turn << "|h:" << hints
       << "|l:" << lives << "|fw:";
    for (size_t i = 0; i < fireworks.size(); ++i) {
      if (i) os << ",";
      os << fireworks[i];
    }
    os << "|deck:";
    for (size_t i = 0; i < deck.size(); ++i) {
      if (i) os << ",";
      os << CardStr(deck[i]);
    }
    for (int p = 0; p < 2; ++p) {
      os << "|d" << p << ":";
      for (size_t i = 0; i < hands[p].size(); ++i) {
        if (i) os << ",";
        os << CardStr(hands[p][i].card) << "#" << hands[p][i].color_mask
           << "." << hands[p][i].rank_mask;
      }
    }
    os << "|disc:";
    for (size_t i = 0; i < discards.size(); ++i) {
      if (i) os << ",";
      os << CardStr(discards[i]);
    }
    return os.str();
  }
};

Slot ParseSlot(const std::string& s) {
  auto hash = s.find('#');
  OBL_CHECK(hash != std::string::npos, UsageError, "bad slot token: " + s);
  auto dot = s.find('.', hash);
  OBL_CHECK(dot != std::string::npos, UsageError, "bad slot token: " + s);
  Slot slot;
  slot.card = ParseCard(s.substr(0, hash));
  slot.color_mask = std::stoi(s.substr(hash + 1, dot - hash - 1));
  slot.rank_mask = std::stoi(s.substr(dot + 1));
  return slot;
}

const MiniHanabiState& Cast(const GameState& s) {
  return static_cast<const MiniHanabiState&>(s);
}

}  // namespace

MiniHanabiEnv::MiniHanabiEnv(const MiniHanabiParams& params) : params_(params) {
  OBL_CHECK(params.num_colors >= 1, UsageError, "need at least one color");
  OBL_CHECK(!params.ranks.empty(), UsageError, "empty rank multiset");
  OBL_CHECK(params.hand_size >= 1, UsageError, "hand_size must be positive");
  OBL_CHECK(params.hint_tokens >= 1, UsageError, "hint_tokens must be positive");
  OBL_CHECK(params.life_tokens >= 1, UsageError, "life_tokens must be positive");
  OBL_CHECK(params.max_turns >= 1, UsageError, "max_turns must be positive");
  std::vector<int> sorted = params.ranks;
  std::sort(sorted.begin(), sorted.end());
  top_rank_ = sorted.back();
  // A deal must be completable: every rank from 1 to the top has a copy.
  for (int r = 1; r <= top_rank_; ++r) {
    OBL_CHECK(std::count(sorted.begin(), sorted.end(), r) >= 1, UsageError,
              "rank multiset skips rank " + std::to_string(r));
  }
  for (int c = 0; c < params.num_colors; ++c) {
    for (int r : sorted) full_deck_.push_back(HanabiCard{c, r});
  }
  OBL_CHECK(static_cast<int>(full_deck_.size()) >= 2 * params.hand_size,
            UsageError, "deck smaller than the two hands");
}

int MiniHanabiEnv::NumDistinctActions() const {
  return 2 * params_.hand_size + params_.num_colors + top_rank_;
}

std::string MiniHanabiEnv::ActionName(int action) const {
  int h = params_.hand_size;
  if (action < h) return "play:" + std::to_string(action);
  if (action < 2 * h) return "discard:" + std::to_string(action - h);
  if (action < 2 * h + params_.num_colors)
    return "hint_color:" + std::to_string(action - 2 * h);
  return "hint_rank:" + std::to_string(action - 2 * h - params_.num_colors + 1);
}

std::vector<WeightedState> MiniHanabiEnv::InitialStates() const {
  std::vector<HanabiCard> order = full_deck_;
  std::sort(order.begin(), order.end(), [](const HanabiCard& a, const HanabiCard& b) {
    return a.color != b.color ? a.color < b.color : a.rank < b.rank;
  });
  std::vector<WeightedState> out;
  // Distinct arrangements of the deck multiset are equally likely.
  std::vector<HanabiCard> perm = order;
  do {
    auto st = std::make_unique<MiniHanabiState>();
    st->hints = params_.hint_tokens;
    st->lives = params_.life_tokens;
    st->fireworks.assign(params_.num_colors, 0);
    st->deck = perm;
    int full_color = (1 << params_.num_colors) - 1;
    int full_rank = (1 << top_rank_) - 1;
    for (int p = 0; p < 2; ++p) {
      for (int i = 0; i < params_.hand_size; ++i) {
        st->hands[p].push_back(Slot{st->deck.back(), full_color, full_rank});
        st->deck.pop_back();
      }
    }
    if (st->deck.empty()) st->end_turn = NumPlayers();
    out.push_back(WeightedState{std::move(st), 0.0});
  } while (std::next_permutation(
      perm.begin(), perm.end(), [](const HanabiCard& a, const HanabiCard& b) {
        return a.color != b.color ? a.color < b.color : a.rank < b.rank;
      }));
  double w = 1.0 / static_cast<double>(out.size());
  for (auto& ws : out) ws.prob = w;
  return out;
}

StatePtr MiniHanabiEnv::SampleInitialState(Rng& rng) const {
  auto st = std::make_unique<MiniHanabiState>();
  st->hints = params_.hint_tokens;
  st->lives = params_.life_tokens;
  st->fireworks.assign(params_.num_colors, 0);
  st->deck = full_deck_;
  for (size_t i = st->deck.size(); i > 1; --i) {
    std::swap(st->deck[i - 1], st->deck[rng.UniformInt(static_cast<int>(i))]);
  }
  int full_color = (1 << params_.num_colors) - 1;
  int full_rank = (1 << top_rank_) - 1;
  for (int p = 0; p < 2; ++p) {
    for (int i = 0; i < params_.hand_size; ++i) {
      st->hands[p].push_back(Slot{st->deck.back(), full_color, full_rank});
      st->deck.pop_back();
    }
  }
  if (st->deck.empty()) st->end_turn = NumPlayers();
  return st;
}

int MiniHanabiEnv::Score(const GameState& s) const {
  const auto& st = Cast(s);
  return std::accumulate(st.fireworks.begin(), st.fireworks.end(), 0);
}

bool MiniHanabiEnv::IsTerminal(const GameState& s) const {
  const auto& st = Cast(s);
  if (st.lives <= 0) return true;
  if (st.turn >= params_.max_turns) return true;
  if (st.end_turn >= 0 && st.turn >= st.end_turn) return true;
  if (Score(s) == params_.num_colors * top_rank_) return true;
  return LegalActions(s).empty();
}

int MiniHanabiEnv::ActingPlayer(const GameState& s) const {
  return Cast(s).turn % 2;
}

std::vector<int> MiniHanabiEnv::LegalActions(const GameState& s) const {
  const auto& st = Cast(s);
  int p = st.turn % 2;
  int h = params_.hand_size;
  std::vector<int> legal;
  int hand_n = static_cast<int>(st.hands[p].size());
  for (int i = 0; i < hand_n; ++i) legal.push_back(i);
  if (st.hints < params_.hint_tokens) {
    for (int i = 0; i < hand_n; ++i) legal.push_back(h + i);
  }
  if (st.hints > 0) {
    const auto& partner = st.hands[1 - p];
    for (int c = 0; c < params_.num_colors; ++c) {
      bool present = std::any_of(partner.begin(), partner.end(),
                                 [&](const Slot& sl) { return sl.card.color == c; });
      if (present) legal.push_back(2 * h + c);
    }
    for (int r = 1; r <= top_rank_; ++r) {
      bool present = std::any_of(partner.begin(), partner.end(),
                                 [&](const Slot& sl) { return sl.card.rank == r; });
      if (present) legal.push_back(2 * h + params_.num_colors + r - 1);
    }
  }
  return legal;
}

double MiniHanabiEnv::Reward(const GameState& s, int action) const {
  const auto& st = Cast(s);
  int h = params_.hand_size;
  if (action >= h) return 0.0;
  int p = st.turn % 2;
  OBL_CHECK(action < static_cast<int>(st.hands[p].size()), UsageError,
            "play action out of range");
  const HanabiCard& card = st.hands[p][action].card;
  if (card.rank == st.fireworks[card.color] + 1) return 1.0;
  // A misplay on the last life forfeits the accumulated score.
  if (st.lives == 1) return -static_cast<double>(Score(s));
  return 0.0;
}

std::vector<WeightedState> MiniHanabiEnv::NextStates(const GameState& s, int action) const {
  const auto& st = Cast(s);
  auto next = std::make_unique<MiniHanabiState>(st);
  int p = st.turn % 2;
  int h = params_.hand_size;
  int full_color = (1 << params_.num_colors) - 1;
  int full_rank = (1 << top_rank_) - 1;

  if (action < 2 * h) {
    int slot = action < h ? action : action - h;
    OBL_CHECK(slot < static_cast<int>(next->hands[p].size()), UsageError,
              "slot out of range");
    HanabiCard card = next->hands[p][slot].card;
    if (action < h) {
      if (card.rank == next->fireworks[card.color] + 1) {
        next->fireworks[card.color] = card.rank;
        if (card.rank == top_rank_ && next->hints < params_.hint_tokens) {
          ++next->hints;
        }
      } else {
        --next->lives;
        next->discards.push_back(card);
      }
    } else {
      OBL_CHECK(next->hints < params_.hint_tokens, UsageError,
                "discard with full hint tokens");
      ++next->hints;
      next->discards.push_back(card);
    }
    next->hands[p].erase(next->hands[p].begin() + slot);
    if (!next->deck.empty()) {
      next->hands[p].push_back(Slot{next->deck.back(), full_color, full_rank});
      next->deck.pop_back();
    }
  } else if (action < 2 * h + params_.num_colors) {
    OBL_CHECK(next->hints > 0, UsageError, "hint without tokens");
    --next->hints;
    int c = action - 2 * h;
    for (auto& sl : next->hands[1 - p]) {
      if (sl.card.color == c) {
        sl.color_mask = 1 << c;
      } else {
        sl.color_mask &= ~(1 << c);
      }
    }
  } else {
    OBL_CHECK(next->hints > 0, UsageError, "hint without tokens");
    --next->hints;
    int r = action - 2 * h - params_.num_colors + 1;
    OBL_CHECK(r >= 1 && r <= top_rank_, UsageError, "hint rank out of range");
    for (auto& sl : next->hands[1 - p]) {
      if (sl.card.rank == r) {
        sl.rank_mask = 1 << (r - 1);
      } else {
        sl.rank_mask &= ~(1 << (r - 1));
      }
    }
  }

  ++next->turn;
  if (next->deck.empty() && next->end_turn < 0) {
    next->end_turn = next->turn + NumPlayers();
  }
  std::vector<WeightedState> out;
  out.push_back(WeightedState{std::move(next), 1.0});
  return out;
}

std::string MiniHanabiEnv::Observation(const GameState& s, int player) const {
  const auto& st = Cast(s);
  std::ostringstream os;
  os << "mh[p" << player << "]|t:" << st.turn << "|h:" << st.hints
     << "|l:" << st.lives << "|fw:";
  for (size_t i = 0; i < st.fireworks.size(); ++i) {
    if (i) os << ",";
    os << st.fireworks[i];
  }
  os << "|deck:" << st.deck.size() << "|disc:";
  for (size_t i = 0; i < st.discards.size(); ++i) {
    if (i) os << ",";
    os << CardStr(st.discards[i]);
  }
  os << "|k:";
  const auto& mine = st.hands[player];
  for (size_t i = 0; i < mine.size(); ++i) {
    if (i) os << ",";
    os << "#" << mine[i].color_mask << "." << mine[i].rank_mask;
  }
  os << "|v:";
  const auto& partner = st.hands[1 - player];
  for (size_t i = 0; i < partner.size(); ++i) {
    if (i) os << ",";
    os << CardStr(partner[i].card);
  }
  if (IsTerminal(s)) os << "|end";
  return os.str();
}

StatePtr MiniHanabiEnv::DecodeState(const std::string& encoded) const {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (true) {
    auto bar = encoded.find('|', pos);
    if (bar == std::string::npos) {
      parts.push_back(encoded.substr(pos));
      break;
    }
    parts.push_back(encoded.substr(pos, bar - pos));
    pos = bar + 1;
  }
  OBL_CHECK(parts.size() == 10 && parts[0] == "mh", UsageError,
            "not a mini_hanabi state: " + encoded);
  auto value = [&](int i, const char* key) {
    std::string prefix = std::string(key) + ":";
    OBL_CHECK(parts[i].rfind(prefix, 0) == 0, UsageError,
              "bad state field: " + parts[i]);
    return parts[i].substr(prefix.size());
  };
  auto st = std::make_unique<MiniHanabiState>();
  st->turn = std::stoi(value(1, "t"));
  st->end_turn = std::stoi(value(2, "end"));
  st->hints = std::stoi(value(3, "h"));
  st->lives = std::stoi(value(4, "l"));
  for (const auto& tok : SplitList(value(5, "fw"))) st->fireworks.push_back(std::stoi(tok));
  OBL_CHECK(static_cast<int>(st->fireworks.size()) == params_.num_colors,
            UsageError, "firework count mismatch");
  for (const auto& tok : SplitList(value(6, "deck"))) st->deck.push_back(ParseCard(tok));
  for (int p = 0; p < 2; ++p) {
    for (const auto& tok : SplitList(value(7 + p, p == 0 ? "d0" : "d1"))) {
      st->hands[p].push_back(ParseSlot(tok));
    }
  }
  for (const auto& tok : SplitList(value(9, "disc"))) st->discards.push_back(ParseCard(tok));
  return st;
}

std::string MiniHanabiEnv::HiddenCompletion(const GameState& s, int player) const {
  const auto& st = Cast(s);
  std::string out;
  for (size_t i = 0; i < st.hands[player].size(); ++i) {
    if (i) out += ",";
    out += CardStr(st.hands[player][i].card);
  }
  return out;
}

std::map<std::pair<int, int>, int> MiniHanabiEnv::UnseenPool(
    const GameState& s, int player) const {
  const auto& st = Cast(s);
  std::map<std::pair<int, int>, int> pool;
  for (const auto& c : full_deck_) ++pool[{c.color, c.rank}];
  auto take = [&](int color, int rank, const char* what) {
    auto it = pool.find({color, rank});
    OBL_CHECK(it != pool.end() && it->second > 0, InconsistentHistoryError,
              std::string(what) + " exceed the deck multiset");
    --it->second;
  };
  for (int c = 0; c < params_.num_colors; ++c) {
    for (int r = 1; r <= st.fireworks[c]; ++r) take(c, r, "fireworks");
  }
  for (const auto& c : st.discards) take(c.color, c.rank, "discards");
  for (const auto& sl : st.hands[1 - player]) {
    take(sl.card.color, sl.card.rank, "partner hand");
  }
  return pool;
}

bool MiniHanabiEnv::EnumerateCompletions(const GameState& anchor, int player,
                                         std::vector<std::string>* out) const {
  const auto& st = Cast(anchor);
  // Pool of candidates for the player's own slots: the full deck minus every
  // card the player can see. Their own actual hand stays in the pool; it is
  // one of the completions.
  auto pool = UnseenPool(anchor, player);

  const auto& slots = st.hands[player];
  std::vector<HanabiCard> partial;
  // Depth-first assignment over slots, respecting multiset counts and the
  // per-slot hint masks carried by the anchor.
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == slots.size()) {
      std::string key;
      for (size_t j = 0; j < partial.size(); ++j) {
        if (j) key += ",";
        key += CardStr(partial[j]);
      }
      out->push_back(key);
      return;
    }
    for (auto& [card, count] : pool) {
      if (count <= 0) continue;
      auto [color, rank] = card;
      if (!(slots[i].color_mask & (1 << color))) continue;
      if (!(slots[i].rank_mask & (1 << (rank - 1)))) continue;
      --count;
      partial.push_back(HanabiCard{color, rank});
      rec(i + 1);
      partial.pop_back();
      ++count;
    }
  };
  rec(0);
  return true;
}

StatePtr MiniHanabiEnv::StateForCompletion(const GameState& anchor, int player,
                                           const std::string& completion,
                                           Rng& rng) const {
  const auto& st = Cast(anchor);
  std::vector<HanabiCard> cards;
  for (const auto& tok : SplitList(completion)) cards.push_back(ParseCard(tok));
  OBL_CHECK(cards.size() == st.hands[player].size(), InconsistentHistoryError,
            "completion length does not match the hand");

  auto next = std::make_unique<MiniHanabiState>(st);
  for (size_t i = 0; i < cards.size(); ++i) next->hands[player][i].card = cards[i];

  // The deck order is hidden too; redraw it uniformly from whatever the
  // multiset leaves once both hands and all visible cards are pinned.
  std::map<std::pair<int, int>, int> pool;
  for (const auto& c : full_deck_) ++pool[{c.color, c.rank}];
  auto take = [&](const HanabiCard& c, const char* what) {
    auto it = pool.find({c.color, c.rank});
    OBL_CHECK(it != pool.end() && it->second > 0, InconsistentHistoryError,
              std::string(what) + " exceeds the deck multiset");
    --it->second;
  };
  for (int c = 0; c < params_.num_colors; ++c) {
    for (int r = 1; r <= st.fireworks[c]; ++r) take(HanabiCard{c, r}, "fireworks");
  }
  for (const auto& c : st.discards) take(c, "discards");
  for (int p = 0; p < 2; ++p) {
    for (const auto& sl : next->hands[p]) take(sl.card, "hand");
  }
  std::vector<HanabiCard> residual;
  for (const auto& [card, count] : pool) {
    for (int i = 0; i < count; ++i) residual.push_back(HanabiCard{card.first, card.second});
  }
  OBL_CHECK(residual.size() == st.deck.size(), InconsistentHistoryError,
            "residual pool does not match the deck size");
  for (size_t i = residual.size(); i > 1; --i) {
    std::swap(residual[i - 1], residual[rng.UniformInt(static_cast<int>(i))]);
  }
  next->deck = residual;
  return next;
}

SlotKnowledge MiniHanabiEnv::KnowledgeFor(const GameState& s, int player, int slot) const {
  const auto& st = Cast(s);
  OBL_CHECK(slot >= 0 && slot < static_cast<int>(st.hands[player].size()),
            UsageError, "slot out of range");
  SlotKnowledge k;
  k.color_known = std::popcount(static_cast<unsigned>(st.hands[player][slot].color_mask)) == 1;
  k.rank_known = std::popcount(static_cast<unsigned>(st.hands[player][slot].rank_mask)) == 1;
  return k;
}

SlotKnowledge MiniHanabiEnv::DeducedKnowledge(const GameState& s, int player,
                                              int slot) const {
  const auto& st = Cast(s);
  OBL_CHECK(slot >= 0 && slot < static_cast<int>(st.hands[player].size()),
            UsageError, "slot out of range");
  const auto pool = UnseenPool(s, player);
  const auto& sl = st.hands[player][slot];
  std::set<int> colors, ranks;
  for (const auto& [card, count] : pool) {
    if (count <= 0) continue;
    auto [color, rank] = card;
    if (!(sl.color_mask & (1 << color))) continue;
    if (!(sl.rank_mask & (1 << (rank - 1)))) continue;
    colors.insert(color);
    ranks.insert(rank);
  }
  OBL_CHECK(!colors.empty(), InconsistentHistoryError,
            "no candidate card fits the slot's hint masks");
  SlotKnowledge k;
  k.color_known = colors.size() == 1;
  k.rank_known = ranks.size() == 1;
  return k;
}

EnvPtr MakeMiniHanabi(const MiniHanabiParams& params) {
  return std::make_unique<MiniHanabiEnv>(params);
}

}  // namespace obl
