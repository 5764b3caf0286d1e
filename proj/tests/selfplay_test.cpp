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
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "obl/crossplay.h"
#include "obl/selfplay.h"
#include "obl/solver.h"
#include "obl/stage_game.h"
#include "obl/toy_game.h"
#include "obl/tree.h"

namespace obl {
namespace {

constexpr const char* kAliceCat = "p0;o=pet:cat";
constexpr const char* kAliceDog = "p0;o=pet:dog";
constexpr const char* kBobOn = "p1;o=start;a=h;o=light:on";
constexpr const char* kBobOff = "p1;o=start;a=h;o=light:off";

int TopAction(const Policy& p, const std::string& key) {
  const ActionDist* d = p.Find(key);
  REQUIRE(d != nullptr);
  int best = -1;
  double best_p = -1.0;
  for (const auto& [a, prob] : *d) {
    if (prob > best_p) { best = a; best_p = prob; }
  }
  return best;
}

void SwapEntries(Policy& p, const std::string& a, const std::string& b) {
  const ActionDist da = *p.Find(a);
  const ActionDist db = *p.Find(b);
  p.Set(a, db);
  p.Set(b, da);
}

SelfplayResult TrainToy(const DecPomdp& env, uint64_t seed,
                        uint64_t episodes = 50000) {
  SelfplayOptions opts;
  opts.episodes = episodes;
  opts.seed = seed;
  return SelfplayTrain(env, opts);
}

}  // namespace

TEST_CASE("epsilon decays linearly then holds at the floor") {
  CHECK(EpsilonAt(0, 100, 1.0, 0.1, 0.5) == doctest::Approx(1.0));
  CHECK(EpsilonAt(25, 100, 1.0, 0.1, 0.5) == doctest::Approx(0.55));
  CHECK(EpsilonAt(50, 100, 1.0, 0.1, 0.5) == doctest::Approx(0.1));
  CHECK(EpsilonAt(99, 100, 1.0, 0.1, 0.5) == doctest::Approx(0.1));
  CHECK(EpsilonAt(0, 100, 1.0, 0.1, 0.0) == doctest::Approx(0.1));
  double prev = 2.0;
  for (uint64_t ep = 0; ep < 100; ++ep) {
    double e = EpsilonAt(ep, 100, 1.0, 0.1, 0.7);
    CHECK(e <= prev);
    prev = e;
  }
}

TEST_CASE("toy selfplay learns a light convention worth ten") {
  const EnvPtr env = MakeToyGame();
  const GameTree tree = GameTree::Enumerate(*env);
  for (uint64_t seed : {3u, 4u}) {
    const SelfplayResult r = TrainToy(*env, seed);
    CHECK(PolicyValue(tree, r.greedy).joint == doctest::Approx(10.0));

    // The two pet observations map to the two distinct light signals and the
    // partner decodes them back to the right guess.
    const int sig_cat = TopAction(r.greedy, kAliceCat);
    const int sig_dog = TopAction(r.greedy, kAliceDog);
    CHECK((sig_cat == kToyLightOn || sig_cat == kToyLightOff));
    CHECK((sig_dog == kToyLightOn || sig_dog == kToyLightOff));
    CHECK(sig_cat != sig_dog);
    const std::string cat_key = sig_cat == kToyLightOn ? kBobOn : kBobOff;
    const std::string dog_key = sig_dog == kToyLightOn ? kBobOn : kBobOff;
    CHECK(TopAction(r.greedy, cat_key) == kToyGuessCat);
    CHECK(TopAction(r.greedy, dog_key) == kToyGuessDog);
  }
}

TEST_CASE("opposite conventions coordinate alone and collide together") {
  const EnvPtr env = MakeToyGame();
  const GameTree tree = GameTree::Enumerate(*env);
  const SelfplayResult r = TrainToy(*env, 1);
  Policy a = r.greedy;
  Policy b = a;  // same convention, mirrored on both seats
  SwapEntries(b, kAliceCat, kAliceDog);
  SwapEntries(b, kBobOn, kBobOff);

  const CrossPlayMatrix m = ExactCrossPlay(tree, {&a, &b}, {"a", "b"});
  CHECK(m.mean[0][0] == doctest::Approx(10.0));
  CHECK(m.mean[1][1] == doctest::Approx(10.0));
  CHECK(m.mean[0][1] == doctest::Approx(-10.0));
  CHECK(m.mean[1][0] == doctest::Approx(-10.0));
}

TEST_CASE("coordination selfplay reaches an equilibrium from every seed") {
  const EnvPtr env = ConvertSimultaneous(CoordinationMatrixGame(), {0, 1});
  const GameTree tree = GameTree::Enumerate(*env);
  std::set<int> equilibria;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    SelfplayOptions opts;
    opts.episodes = 5000;
    opts.seed = seed;
    const SelfplayResult r = SelfplayTrain(*env, opts);
    CHECK(PolicyValue(tree, r.greedy).joint == doctest::Approx(1.0));
    const int first = TopAction(r.greedy, "p0;o=stage");
    const int second = TopAction(r.greedy, "p1;o=stage;a=h;o=stage");
    CHECK(first == second);
    equilibria.insert(first);
  }
  // Which of the two coordination points wins is seed luck; across ten seeds
  // both show up.
  CHECK(equilibria == std::set<int>{0, 1});
}

TEST_CASE("the learning curve samples the greedy policy on schedule") {
  const EnvPtr env = MakeToyGame();
  const GameTree tree = GameTree::Enumerate(*env);
  SelfplayOptions opts;
  opts.episodes = 50000;
  opts.seed = 7;
  opts.eval_interval = 10000;
  opts.eval_tree = &tree;
  const SelfplayResult r = SelfplayTrain(*env, opts);
  REQUIRE(r.curve.size() == 5);
  for (size_t i = 0; i < r.curve.size(); ++i) {
    CHECK(r.curve[i].episode == 10000 * (i + 1));
    CHECK(r.curve[i].oracle_distance < 0.0);
  }
  CHECK(r.curve.back().eval == doctest::Approx(PolicyValue(tree, r.greedy).joint));
}

TEST_CASE("a warm start resumes from the given table") {
  const EnvPtr env = MakeToyGame();
  const GameTree tree = GameTree::Enumerate(*env);
  const SelfplayResult first = TrainToy(*env, 2);
  REQUIRE(PolicyValue(tree, first.greedy).joint == doctest::Approx(10.0));

  SelfplayOptions opts;
  opts.episodes = 200;
  opts.seed = 99;
  opts.eps_start = 0.0;
  opts.eps_end = 0.0;
  opts.warm_start = &first.q;
  const SelfplayResult resumed = SelfplayTrain(*env, opts);
  CHECK(PolicyValue(tree, resumed.greedy).joint == doctest::Approx(10.0));
}

}  // namespace obl
