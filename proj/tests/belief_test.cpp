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
#include "doctest.h"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "obl/belief.h"
#include "obl/env.h"
#include "obl/mini_hanabi.h"
#include "obl/random_game.h"
#include "obl/solver.h"
#include "obl/toy_game.h"
#include "obl/tree.h"

namespace obl {
namespace {

int FindActingGroup(const GameTree& tree, int player, int depth,
                    const std::string& key_fragment) {
  int found = -1;
  for (size_t g = 0; g < tree.groups().size(); ++g) {
    const AohGroup& grp = tree.group(static_cast<int>(g));
    if (!grp.acting || grp.player != player || grp.depth != depth) continue;
    if (grp.key.find(key_fragment) == std::string::npos) continue;
    REQUIRE(found == -1);  // the fragment must identify one group
    found = static_cast<int>(g);
  }
  REQUIRE(found >= 0);
  return found;
}

// First mover's toy policy with per-pet mixing; missing keys (the guesser's)
// resolve to uniform inside ReachUnder.
Policy ToyFirstMoverPolicy(const GameTree& tree, double cat_on, double cat_off,
                           double cat_bail, double cat_reveal, double dog_on,
                           double dog_off, double dog_bail, double dog_reveal) {
  Policy pi;
  pi.name = "toy-first-mover";
  pi.env_hash = "";
  int cat = FindActingGroup(tree, 0, 0, "cat");
  int dog = FindActingGroup(tree, 0, 0, "dog");
  pi.Set(tree.group(cat).key, {{kToyLightOn, cat_on},
                               {kToyLightOff, cat_off},
                               {kToyAliceBail, cat_bail},
                               {kToyReveal, cat_reveal}});
  pi.Set(tree.group(dog).key, {{kToyLightOn, dog_on},
                               {kToyLightOff, dog_off},
                               {kToyAliceBail, dog_bail},
                               {kToyReveal, dog_reveal}});
  return pi;
}

Policy RandomFullSupportPolicy(const GameTree& tree, uint64_t seed) {
  Policy pi;
  pi.name = "random-full-support";
  pi.env_hash = "";
  Rng rng(seed);
  for (const auto& g : tree.groups()) {
    if (!g.acting) continue;
    ActionDist dist;
    double total = 0.0;
    for (int a : g.legal) {
      double w = 0.1 + rng.Uniform();
      dist.emplace_back(a, w);
      total += w;
    }
    for (auto& [a, p] : dist) p /= total;
    pi.Set(g.key, dist);
  }
  return pi;
}

double Tv(const BeliefDistribution& a, const BeliefDistribution& b) {
  std::map<int, double> diff;
  for (const auto& [n, p] : a.support) diff[n] += p;
  for (const auto& [n, p] : b.support) diff[n] -= p;
  double tv = 0.0;
  for (const auto& [n, d] : diff) tv += std::abs(d);
  return tv / 2.0;
}

}  // namespace

TEST_CASE("posterior follows the chain rule on the toy game") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  Policy pi = ToyFirstMoverPolicy(tree, 0.4, 0.1, 0.3, 0.2,  // cat
                                  0.2, 0.3, 0.1, 0.4);       // dog
  auto reach = ReachUnder(tree, pi);

  auto pet_prob = [&](int gid) {
    BeliefDistribution b = ExactBelief(tree, reach, gid);
    double cat = 0.0;
    for (const auto& [n, p] : b.support) {
      if (tree.node(n).state->Encode().find("pet:cat") != std::string::npos) cat += p;
    }
    return cat;
  };

  // P(cat | light on) = .5*.4 / (.5*.4 + .5*.2)
  CHECK(pet_prob(FindActingGroup(tree, 1, 1, "light:on")) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // P(cat | light off) = .5*.1 / (.5*.1 + .5*.3)
  CHECK(pet_prob(FindActingGroup(tree, 1, 1, "light:off")) ==
        doctest::Approx(0.25).epsilon(1e-12));
  // A revealed pet is known outright.
  CHECK(pet_prob(FindActingGroup(tree, 1, 1, "pet:cat")) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pet_prob(FindActingGroup(tree, 1, 1, "pet:dog")) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("histories the base policy cannot produce raise") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  Policy pi = ToyFirstMoverPolicy(tree, 0.5, 0.3, 0.2, 0.0,  // cat never reveals
                                  0.1, 0.4, 0.5, 0.0);       // dog never reveals
  auto reach = ReachUnder(tree, pi);

  CHECK_THROWS_AS(ExactBelief(tree, reach, FindActingGroup(tree, 1, 1, "pet:cat")),
                  UnreachableHistoryError);
  CHECK_THROWS_AS(ExactBelief(tree, reach, FindActingGroup(tree, 1, 1, "pet:dog")),
                  UnreachableHistoryError);

  // Reachable keys keep their exact posterior: .5*.5 / (.5*.5 + .5*.1).
  BeliefDistribution on = ExactBelief(tree, reach, FindActingGroup(tree, 1, 1, "light:on"));
  double cat = 0.0;
  for (const auto& [n, p] : on.support) {
    if (tree.node(n).state->Encode().find("pet:cat") != std::string::npos) cat += p;
  }
  CHECK(cat == doctest::Approx(5.0 / 6.0).epsilon(1e-12));

  // The tremble fallback turns the impossible key into certain knowledge:
  // the revealed observation itself pins the hidden pet.
  BeliefDistribution t =
      TrembleBelief(tree, reach, FindActingGroup(tree, 1, 1, "pet:cat"));
  REQUIRE(t.support.size() == 1);
  CHECK(t.support[0].second == doctest::Approx(1.0));
  CHECK(tree.node(t.support[0].first).state->Encode().find("pet:cat") !=
        std::string::npos);
}

TEST_CASE("tremble fallback keeps the least-unlikely histories") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  int gid = FindActingGroup(tree, 1, 1, "light:on");
  const AohGroup& g = tree.group(gid);
  REQUIRE(g.nodes.size() == 2);

  std::vector<TrembleReach> reach(tree.nodes().size());

  // Differing zero counts: only the least-fumbled history survives.
  reach[g.nodes[0]] = {2, 0.3};
  reach[g.nodes[1]] = {1, 0.4};
  BeliefDistribution b = TrembleBelief(tree, reach, gid);
  REQUIRE(b.support.size() == 1);
  CHECK(b.support[0].first == g.nodes[1]);
  CHECK(b.support[0].second == doctest::Approx(1.0));

  // Equal zero counts: weights renormalize.
  reach[g.nodes[0]] = {1, 0.1};
  reach[g.nodes[1]] = {1, 0.3};
  b = TrembleBelief(tree, reach, gid);
  REQUIRE(b.support.size() == 2);
  CHECK(b.support[0].second == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(b.support[1].second == doctest::Approx(0.75).epsilon(1e-12));

  // All candidates weightless: there is nothing to normalize.
  reach[g.nodes[0]] = {1, 0.0};
  reach[g.nodes[1]] = {1, 0.0};
  CHECK_THROWS_AS(TrembleBelief(tree, reach, gid), NoSupportError);
}

TEST_CASE("tremble agrees with the exact posterior wherever defined") {
  for (uint64_t seed = 41; seed < 49; ++seed) {
    auto env = MakeRandomGame(seed);
    GameTree tree = GameTree::Enumerate(*env);
    Policy pi = RandomFullSupportPolicy(tree, seed * 17 + 1);
    auto reach = ReachUnder(tree, pi);
    for (size_t gid = 0; gid < tree.groups().size(); ++gid) {
      if (!tree.group(static_cast<int>(gid)).acting) continue;
      BeliefDistribution exact = ExactBelief(tree, reach, static_cast<int>(gid));
      BeliefDistribution tremble = TrembleBelief(tree, reach, static_cast<int>(gid));
      CHECK(Tv(exact, tremble) <= 1e-12);
    }
  }
}

TEST_CASE("grounded conditioning matches the uniform posterior on the toy game") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  Policy uniform = UniformPolicy(tree);
  auto reach = ReachUnder(tree, uniform);
  for (size_t gid = 0; gid < tree.groups().size(); ++gid) {
    if (!tree.group(static_cast<int>(gid)).acting) continue;
    CHECK(Tv(ExactBelief(tree, reach, static_cast<int>(gid)),
             GroundedBelief(tree, static_cast<int>(gid))) <= 1e-12);
  }
}

TEST_CASE("hidden-hand-dependent legality separates the two conditionings") {
  // Two-card hands over a six-card deck, one move each. How many hints the
  // first mover may give depends on the partner's hidden hand, so weighting
  // histories by 1/|legal| (the uniform base) shifts mass away from plain
  // consistency counting.
  MiniHanabiParams params;
  params.num_colors = 2;
  params.ranks = {1, 1, 2};
  params.hand_size = 2;
  params.hint_tokens = 3;
  params.life_tokens = 2;
  params.max_turns = 2;
  auto env = MakeMiniHanabi(params);
  GameTree tree = GameTree::Enumerate(*env);

  Policy uniform = UniformPolicy(tree);
  auto reach = ReachUnder(tree, uniform);

  int diverging = 0;
  int checked = 0;
  for (size_t gid = 0; gid < tree.groups().size(); ++gid) {
    const AohGroup& g = tree.group(static_cast<int>(gid));
    if (!g.acting || g.depth != 1) continue;
    ++checked;

    // Independent one-factor oracle: weight = chance * 1/|legal at parent|.
    std::vector<std::pair<int, double>> expected;
    bool legal_sizes_vary = false;
    size_t first_size = tree.node(tree.node(g.nodes[0]).parent).legal.size();
    double total = 0.0;
    for (int n : g.nodes) {
      const TreeNode& parent = tree.node(tree.node(n).parent);
      if (parent.legal.size() != first_size) legal_sizes_vary = true;
      double w = tree.node(n).chance_reach / static_cast<double>(parent.legal.size());
      expected.emplace_back(n, w);
      total += w;
    }
    for (auto& [n, w] : expected) w /= total;

    BeliefDistribution exact = ExactBelief(tree, reach, static_cast<int>(gid));
    REQUIRE(exact.support.size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i) {
      CHECK(exact.support[i].first == expected[i].first);
      CHECK(exact.support[i].second ==
            doctest::Approx(expected[i].second).epsilon(1e-12));
    }

    if (legal_sizes_vary) {
      ++diverging;
      CHECK(Tv(exact, GroundedBelief(tree, static_cast<int>(gid))) > 1e-9);
    }
  }
  CHECK(checked > 0);
  CHECK(diverging > 0);
}

TEST_CASE("belief sampling follows the weights") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  Policy pi = ToyFirstMoverPolicy(tree, 0.4, 0.1, 0.3, 0.2,
                                  0.2, 0.3, 0.1, 0.4);
  auto reach = ReachUnder(tree, pi);
  BeliefDistribution b = ExactBelief(tree, reach, FindActingGroup(tree, 1, 1, "light:on"));

  Rng rng(7);
  int cat = 0;
  const int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) {
    int n = b.Sample(rng);
    if (tree.node(n).state->Encode().find("pet:cat") != std::string::npos) ++cat;
  }
  CHECK(static_cast<double>(cat) / kDraws == doctest::Approx(2.0 / 3.0).epsilon(0.03));

  BeliefDistribution empty;
  CHECK_THROWS_AS(empty.Sample(rng), NoSupportError);
}

TEST_CASE("belief dumps parse and account for every acting history") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  size_t acting = 0;
  for (const auto& g : tree.groups()) acting += g.acting ? 1 : 0;

  Policy uniform = UniformPolicy(tree);
  auto doc = nlohmann::json::parse(DumpBeliefsJson(tree, uniform, "tremble"));
  CHECK(doc["format"] == "obl.belief/1");
  CHECK(doc["kind"] == "tremble");
  CHECK(doc["entries"].size() == acting);
  CHECK(doc["skipped_unreachable"] == 0);
  for (const auto& [key, arr] : doc["entries"].items()) {
    double mass = 0.0;
    for (const auto& e : arr) mass += e[2].get<double>();
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  }

  // A base that never reveals leaves both revealed keys without an exact
  // posterior; the dump reports them instead of inventing one.
  Policy never = ToyFirstMoverPolicy(tree, 0.5, 0.3, 0.2, 0.0,
                                     0.1, 0.4, 0.5, 0.0);
  auto strict = nlohmann::json::parse(DumpBeliefsJson(tree, never, "exact"));
  CHECK(strict["skipped_unreachable"] == 2);
  CHECK(strict["entries"].size() == acting - 2);

  auto grounded = nlohmann::json::parse(DumpBeliefsJson(tree, uniform, "grounded"));
  CHECK(grounded["entries"].size() == acting);

  CHECK_THROWS_AS(DumpBeliefsJson(tree, uniform, "fuzzy"), UsageError);
}

}  // namespace obl
