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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "obl/grounded_report.h"
#include "obl/mini_hanabi.h"
#include "obl/policy.h"
#include "obl/toy_game.h"

namespace obl {
namespace {

MiniHanabiParams MicroParams() {
  MiniHanabiParams p;
  p.num_colors = 2;
  p.ranks = {1, 2};
  p.hand_size = 1;
  p.hint_tokens = 1;
  p.life_tokens = 1;
  p.max_turns = 12;
  return p;
}

}  // namespace

TEST_CASE("an exhausted pool pins a card no hint ever touched") {
  MiniHanabiEnv env(MicroParams());
  // Visible to the first seat: fireworks c0r1, discard c0r2, partner c1r1.
  // The only unseen card left is c1r2, so the slot is fully determined.
  StatePtr s = env.DecodeState(
      "mh|t:0|end:-1|h:0|l:1|fw:1,0|deck:|d0:c1r2#3.3|d1:c1r1#3.3|disc:c0r2");
  const SlotKnowledge masks = env.KnowledgeFor(*s, 0, 0);
  CHECK(!masks.color_known);
  CHECK(!masks.rank_known);
  const SlotKnowledge deduced = env.DeducedKnowledge(*s, 0, 0);
  CHECK(deduced.color_known);
  CHECK(deduced.rank_known);
}

TEST_CASE("a pool that agrees on rank but not color stays half known") {
  MiniHanabiEnv env(MicroParams());
  // Unseen for the first seat: own c0r1 plus c1r1 in the deck. Both rank 1.
  StatePtr s = env.DecodeState(
      "mh|t:0|end:-1|h:1|l:1|fw:0,0|deck:c1r1|d0:c0r1#3.3|d1:c1r2#3.3|disc:c0r2");
  const SlotKnowledge deduced = env.DeducedKnowledge(*s, 0, 0);
  CHECK(!deduced.color_known);
  CHECK(deduced.rank_known);
}

TEST_CASE("hint masks and card counting combine") {
  MiniHanabiEnv env(MicroParams());
  // A color hint narrowed the slot to color 1; the unseen pool holds c0r1 and
  // c1r2, and only one of them fits the mask.
  StatePtr s = env.DecodeState(
      "mh|t:0|end:-1|h:0|l:1|fw:0,0|deck:c0r1|d0:c1r2#2.3|d1:c0r2#3.3|disc:c1r1");
  const SlotKnowledge masks = env.KnowledgeFor(*s, 0, 0);
  CHECK(masks.color_known);
  CHECK(!masks.rank_known);
  const SlotKnowledge deduced = env.DeducedKnowledge(*s, 0, 0);
  CHECK(deduced.color_known);
  CHECK(deduced.rank_known);
}

TEST_CASE("every play lands in exactly one bucket") {
  const EnvPtr env = MakeMiniHanabi(MicroParams());
  Policy uniform;  // empty table: uniform fallback at every key
  const GroundedPlayReport r = GroundedPlayEval(*env, uniform, 300, 17);
  CHECK(r.episodes == 300);
  CHECK(r.plays > 0);
  CHECK(r.both + r.color_only + r.rank_only + r.none == r.plays);
  const double total = r.frac_both() + r.frac_color_only() +
                       r.frac_rank_only() + r.frac_none();
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("the json report mirrors the counters") {
  const EnvPtr env = MakeMiniHanabi(MicroParams());
  Policy uniform;
  const GroundedPlayReport r = GroundedPlayEval(*env, uniform, 50, 3);
  const auto doc = nlohmann::json::parse(GroundedReportJson(r));
  CHECK(doc["format"] == "obl.grounded/1");
  CHECK(doc["episodes"].get<uint64_t>() == 50);
  CHECK(doc["plays"].get<uint64_t>() == r.plays);
  CHECK(doc["counts"]["both"].get<uint64_t>() == r.both);
  CHECK(doc["fractions"]["none"].get<double>() == doctest::Approx(r.frac_none()));
}

TEST_CASE("non hanabi envs are rejected") {
  const EnvPtr env = MakeToyGame();
  Policy uniform;
  CHECK_THROWS_AS(GroundedPlayEval(*env, uniform, 10, 1), UsageError);
}

}  // namespace obl
