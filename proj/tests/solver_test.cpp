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
#include <functional>
#include <string>
#include <vector>

#include "obl/aoh.h"
#include "obl/env.h"
#include "obl/random_game.h"
#include "obl/solver.h"
#include "obl/stage_game.h"
#include "obl/toy_game.h"
#include "obl/tree.h"

namespace obl {
namespace {

// Direct expected-return recursion over the raw env, no tree involved. The
// per-player histories are threaded through the walk exactly as the env
// contract describes them, which makes this an independent check on both
// enumeration and the value pass.
double DirectReturn(const DecPomdp& env, const GameState& s,
                    const std::vector<Aoh>& aohs,
                    const std::function<std::vector<double>(
                        const std::string&, const std::vector<int>&)>& probs_at) {
  if (env.IsTerminal(s)) return 0.0;
  int actor = env.ActingPlayer(s);
  std::vector<int> legal = env.LegalActions(s);
  std::vector<double> probs = probs_at(aohs[actor].Key(), legal);
  double total = 0.0;
  for (size_t k = 0; k < legal.size(); ++k) {
    if (probs[k] == 0.0) continue;
    double branch = env.Reward(s, legal[k]);
    for (const auto& [next, chance] : env.NextStates(s, legal[k])) {
      std::vector<Aoh> next_aohs = aohs;
      for (int q = 0; q < env.NumPlayers(); ++q) {
        next_aohs[q].AddAction(legal[k], env.ActionVisibleTo(s, actor, q));
        next_aohs[q].AddObservation(env.Observation(*next, q));
      }
      branch += chance * DirectReturn(env, *next, next_aohs, probs_at);
    }
    total += probs[k] * branch;
  }
  return total;
}

double DirectJoint(const DecPomdp& env,
                   const std::function<std::vector<double>(
                       const std::string&, const std::vector<int>&)>& probs_at) {
  double joint = 0.0;
  for (const auto& [state, chance] : env.InitialStates()) {
    std::vector<Aoh> aohs;
    for (int q = 0; q < env.NumPlayers(); ++q) {
      aohs.emplace_back(q);
      aohs[q].AddObservation(env.Observation(*state, q));
    }
    joint += chance * DirectReturn(env, *state, aohs, probs_at);
  }
  return joint;
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

int FindActingGroup(const GameTree& tree, int player, int depth,
                    const std::string& key_fragment) {
  for (size_t g = 0; g < tree.groups().size(); ++g) {
    const AohGroup& grp = tree.group(static_cast<int>(g));
    if (grp.acting && grp.player == player && grp.depth == depth &&
        grp.key.find(key_fragment) != std::string::npos) {
      return static_cast<int>(g);
    }
  }
  REQUIRE(false);
  return -1;
}

int ArgmaxAction(const Policy& pi, const std::string& key) {
  const ActionDist* dist = pi.Find(key);
  REQUIRE(dist != nullptr);
  int best = -1;
  double best_p = -1.0;
  for (const auto& [a, p] : *dist) {
    if (p > best_p) { best = a; best_p = p; }
  }
  return best;
}

}  // namespace

TEST_CASE("expected value matches direct recursion") {
  std::vector<EnvPtr> envs;
  envs.push_back(MakeToyGame());
  envs.push_back(BuildEnv(PresetConfig("matrix")));
  envs.push_back(BuildEnv(PresetConfig("hanabi_micro")));
  for (uint64_t seed = 61; seed < 67; ++seed) envs.push_back(MakeRandomGame(seed));

  uint64_t pol_seed = 900;
  for (const EnvPtr& env : envs) {
    GameTree tree = GameTree::Enumerate(*env);
    for (int variant = 0; variant < 2; ++variant) {
      Policy pi = variant == 0 ? UniformPolicy(tree)
                               : RandomFullSupportPolicy(tree, ++pol_seed);
      ValueResult v = PolicyValue(tree, pi);
      double direct = DirectJoint(*env, [&](const std::string& key,
                                            const std::vector<int>& legal) {
        return pi.ProbsAt(key, legal);
      });
      CHECK(v.joint == doctest::Approx(direct).epsilon(1e-12));

      // Per-root values recombine into the joint value.
      double from_roots = 0.0;
      for (int r : tree.roots()) {
        from_roots += tree.node(r).chance_reach * v.node_value[r];
      }
      CHECK(from_roots == doctest::Approx(v.joint).epsilon(1e-12));
    }
  }
}

TEST_CASE("per-player value recursion for mixed seats") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  Policy a = RandomFullSupportPolicy(tree, 77);
  Policy b = RandomFullSupportPolicy(tree, 78);
  ValueResult v = JointValue(tree, {&a, &b});
  double direct = DirectJoint(*env, [&](const std::string& key,
                                        const std::vector<int>& legal) {
    const Policy& pi = PlayerOfAohKey(key) == 0 ? a : b;
    return pi.ProbsAt(key, legal);
  });
  CHECK(v.joint == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("softmax handles temperature zero ties and heat") {
  // Unique maximum at index 2.
  auto d = SoftmaxDist({0.0, 1.0, 2.0}, 0.0, TieBreak::kLowestIndex, nullptr);
  CHECK(d == std::vector<double>{0.0, 0.0, 1.0});

  // Exact tie: the lowest index takes it.
  d = SoftmaxDist({3.0, 3.0, 1.0}, 0.0, TieBreak::kLowestIndex, nullptr);
  CHECK(d == std::vector<double>{1.0, 0.0, 0.0});

  // Seeded tie-break is deterministic given the seed.
  Rng r1(5), r2(5);
  auto s1 = SoftmaxDist({3.0, 3.0, 1.0}, 0.0, TieBreak::kSeededRandom, &r1);
  auto s2 = SoftmaxDist({3.0, 3.0, 1.0}, 0.0, TieBreak::kSeededRandom, &r2);
  CHECK(s1 == s2);
  CHECK(s1[2] == 0.0);
  CHECK(s1[0] + s1[1] == doctest::Approx(1.0));

  // Positive temperature matches the closed form.
  d = SoftmaxDist({1.0, 2.0}, 0.5, TieBreak::kLowestIndex, nullptr);
  double z = std::exp((1.0 - 2.0) / 0.5) + 1.0;
  CHECK(d[0] == doctest::Approx(std::exp((1.0 - 2.0) / 0.5) / z).epsilon(1e-12));
  CHECK(d[1] == doctest::Approx(1.0 / z).epsilon(1e-12));

  // Shifting all values leaves the heat distribution unchanged.
  auto shifted = SoftmaxDist({1001.0, 1002.0}, 0.5, TieBreak::kLowestIndex, nullptr);
  CHECK(shifted[0] == doctest::Approx(d[0]).epsilon(1e-12));
}

TEST_CASE("one operator step finds the reveal line") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  Policy uniform = UniformPolicy(tree);
  SolveOptions opts;
  OblResult r = OblOperator(tree, uniform, opts);

  CHECK(r.joint == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(r.trembled_groups == 0);  // uniform play reaches every history

  // First mover: reveal from both private states.
  CHECK(ArgmaxAction(r.policy, tree.group(FindActingGroup(tree, 0, 0, "cat")).key) ==
        kToyReveal);
  CHECK(ArgmaxAction(r.policy, tree.group(FindActingGroup(tree, 0, 0, "dog")).key) ==
        kToyReveal);
  // Second mover: bail on an uninformative light, guess a revealed pet.
  CHECK(ArgmaxAction(r.policy, tree.group(FindActingGroup(tree, 1, 1, "light:on")).key) ==
        kToyBobBail);
  CHECK(ArgmaxAction(r.policy, tree.group(FindActingGroup(tree, 1, 1, "light:off")).key) ==
        kToyBobBail);
  CHECK(ArgmaxAction(r.policy, tree.group(FindActingGroup(tree, 1, 1, "pet:cat")).key) ==
        kToyGuessCat);
  CHECK(ArgmaxAction(r.policy, tree.group(FindActingGroup(tree, 1, 1, "pet:dog")).key) ==
        kToyGuessDog);

  // Deviation values at the first mover's states, under the solved continuation.
  const GroupQ& q = r.q.at(tree.group(FindActingGroup(tree, 0, 0, "cat")).key);
  REQUIRE(q.q.size() == 4);
  CHECK(q.q[0] == doctest::Approx(0.5).epsilon(1e-12));   // light on, partner bails
  CHECK(q.q[1] == doctest::Approx(0.5).epsilon(1e-12));   // light off, partner bails
  CHECK(q.q[2] == doctest::Approx(1.0).epsilon(1e-12));   // bail
  CHECK(q.q[3] == doctest::Approx(5.0).epsilon(1e-12));   // reveal, partner guesses
}

TEST_CASE("the solved line is a fixed point of the operator") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  SolveOptions opts;
  OblResult r1 = OblOperator(tree, UniformPolicy(tree), opts);
  OblResult r2 = OblOperator(tree, r1.policy, opts);

  CHECK(r2.joint == doctest::Approx(5.0).epsilon(1e-12));
  // The reveal base never produces light observations, so those keys now need
  // the tremble fallback, and it still recommends bailing there.
  CHECK(r2.trembled_groups > 0);
  PolicyDiffReport diff = DiffPolicies(r1.policy, r2.policy);
  CHECK(diff.only_a == 0);
  CHECK(diff.only_b == 0);
  CHECK(diff.max_tv <= 1e-12);

  auto levels = OblHierarchy(tree, UniformPolicy(tree), 3, opts);
  REQUIRE(levels.size() == 3);
  CHECK(levels[0].joint == doctest::Approx(r1.joint).epsilon(1e-12));
  CHECK(levels[2].joint == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(DiffPolicies(levels[1].policy, levels[2].policy).max_tv <= 1e-12);
}

TEST_CASE("work order cannot leak into the result") {
  std::vector<EnvPtr> envs;
  envs.push_back(MakeToyGame());
  for (uint64_t seed = 71; seed < 75; ++seed) envs.push_back(MakeRandomGame(seed));

  for (const EnvPtr& env : envs) {
    GameTree tree = GameTree::Enumerate(*env);
    Policy base = RandomFullSupportPolicy(tree, 301);
    SolveOptions a, b;
    a.shuffle_seed = 0;
    b.shuffle_seed = 12345;
    OblResult ra = OblOperator(tree, base, a);
    OblResult rb = OblOperator(tree, base, b);
    CHECK(ra.joint == rb.joint);
    CHECK(DiffPolicies(ra.policy, rb.policy).max_tv == 0.0);
    REQUIRE(ra.q.size() == rb.q.size());
    for (const auto& [key, qa] : ra.q) {
      const GroupQ& qb = rb.q.at(key);
      REQUIRE(qa.q.size() == qb.q.size());
      for (size_t i = 0; i < qa.q.size(); ++i) CHECK(qa.q[i] == qb.q[i]);
    }
  }
}

TEST_CASE("deviation values against a frozen continuation") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  Policy uniform = UniformPolicy(tree);
  SolveOptions opts;
  OblResult obl1 = OblOperator(tree, uniform, opts);

  // Freezing the operator's own output as the continuation must reproduce the
  // action values the operator computed on the way.
  CounterfactualResult cf = CounterfactualQ(tree, uniform, obl1.policy);
  for (const auto& [key, gq] : obl1.q) {
    const GroupQ& got = cf.q.at(key);
    REQUIRE(got.q.size() == gq.q.size());
    for (size_t i = 0; i < gq.q.size(); ++i) {
      CHECK(got.q[i] == doctest::Approx(gq.q[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("best response beats alternatives against the same partner") {
  SolveOptions opts;
  for (uint64_t seed = 81; seed < 86; ++seed) {
    auto env = MakeRandomGame(seed);
    GameTree tree = GameTree::Enumerate(*env);
    Policy partner = RandomFullSupportPolicy(tree, seed + 500);
    for (int p = 0; p < env->NumPlayers(); ++p) {
      BestResponseResult br = BestResponse(tree, partner, p, opts);
      for (uint64_t alt_seed = 0; alt_seed < 8; ++alt_seed) {
        Policy alt = RandomFullSupportPolicy(tree, seed * 100 + alt_seed);
        // Alternative controls seat p, the partner fills every other seat.
        std::vector<const Policy*> seats;
        for (int q = 0; q < env->NumPlayers(); ++q) {
          seats.push_back(q == p ? &alt : &partner);
        }
        CHECK(br.joint >= JointValue(tree, seats).joint - 1e-12);
      }
    }
  }
}

TEST_CASE("best responses on the toy game") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  Policy uniform = UniformPolicy(tree);
  SolveOptions opts;

  // Against a coin-flipping guesser the first mover just takes the sure point.
  BestResponseResult first = BestResponse(tree, uniform, 0, opts);
  CHECK(first.joint == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ArgmaxAction(first.policy, tree.group(FindActingGroup(tree, 0, 0, "cat")).key) ==
        kToyAliceBail);

  // Against a uniform first mover the guesser cashes in on reveals only:
  // (0.5 + 0.5 + 1 + (-5+10)) / 4.
  BestResponseResult second = BestResponse(tree, uniform, 1, opts);
  CHECK(second.joint == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(ArgmaxAction(second.policy, tree.group(FindActingGroup(tree, 1, 1, "pet:cat")).key) ==
        kToyGuessCat);
  CHECK(ArgmaxAction(second.policy, tree.group(FindActingGroup(tree, 1, 1, "light:on")).key) ==
        kToyBobBail);
}

TEST_CASE("iterated response coordinates the stage game") {
  auto env = BuildEnv(PresetConfig("matrix"));
  GameTree tree = GameTree::Enumerate(*env);
  SolveOptions opts;  // lowest-index ties
  auto levels = KLevelHierarchy(tree, 2, opts);
  REQUIRE(levels.size() == 3);

  // Level 1 of both roles picks the first action, which lands on the payoff-1
  // diagonal cell; level 2 keeps it.
  CHECK(PolicyValue(tree, levels[1]).joint == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(PolicyValue(tree, levels[2]).joint == doctest::Approx(1.0).epsilon(1e-12));
  ValueResult cross = JointValue(tree, {&levels[1], &levels[1]});
  CHECK(cross.joint == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("crossplay value oracle on the toy game") {
  auto env = MakeToyGame();
  GameTree tree = GameTree::Enumerate(*env);
  Policy uniform = UniformPolicy(tree);
  SolveOptions opts;
  OblResult obl1 = OblOperator(tree, uniform, opts);

  // Solved first mover reveals (-5); a uniform guesser then averages
  // bail 0.5, right guess +10, wrong guess -10.
  ValueResult v = JointValue(tree, {&obl1.policy, &uniform});
  CHECK(v.joint == doctest::Approx(-5.0 + 0.5 / 3.0).epsilon(1e-12));
}

}  // namespace obl
