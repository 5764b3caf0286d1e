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
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "obl/crossplay.h"
#include "obl/selfplay.h"
#include "obl/solver.h"
#include "obl/toy_game.h"
#include "obl/tree.h"

namespace obl {
namespace {

SelfplayResult Convention(const DecPomdp& env, uint64_t seed) {
  SelfplayOptions opts;
  opts.episodes = 50000;
  opts.seed = seed;
  return SelfplayTrain(env, opts);
}

}  // namespace

TEST_CASE("the diagonal of exact cross-play is plain policy value") {
  const EnvPtr env = MakeToyGame();
  const GameTree tree = GameTree::Enumerate(*env);
  const Policy uniform = UniformPolicy(tree);
  const Policy obl1 = OblOperator(tree, uniform, SolveOptions{}).policy;

  const CrossPlayMatrix m =
      ExactCrossPlay(tree, {&uniform, &obl1}, {"uniform", "obl1"});
  CHECK(std::abs(m.mean[0][0] - PolicyValue(tree, uniform).joint) < 1e-12);
  CHECK(std::abs(m.mean[1][1] - PolicyValue(tree, obl1).joint) < 1e-12);
  CHECK(m.mode == "exact");
  CHECK(m.se[0][1] == 0.0);
}

TEST_CASE("seat order matters in the off-diagonal cells") {
  const EnvPtr env = MakeToyGame();
  const GameTree tree = GameTree::Enumerate(*env);
  const Policy uniform = UniformPolicy(tree);
  const Policy obl1 = OblOperator(tree, uniform, SolveOptions{}).policy;
  const CrossPlayMatrix m =
      ExactCrossPlay(tree, {&uniform, &obl1}, {"uniform", "obl1"});

  // obl1's first seat always reveals, so the pair's value only depends on the
  // second seat; uniform's first seat hedges across all four moves.
  CHECK(m.mean[0][1] != doctest::Approx(m.mean[1][0]));
  // seat0 obl1 reveals (-5), seat1 uniform then picks one of three guesses.
  CHECK(m.mean[1][0] == doctest::Approx(-5.0 + (0.5 + 10.0 - 10.0) / 3.0));
}

TEST_CASE("sampled cross-play converges to the exact matrix") {
  const EnvPtr env = MakeToyGame();
  const GameTree tree = GameTree::Enumerate(*env);
  const SelfplayResult a = Convention(*env, 1);
  const SelfplayResult b = Convention(*env, 2);
  const std::vector<const Policy*> ps = {&a.greedy, &b.greedy};
  const std::vector<std::string> labels = {"a", "b"};

  const CrossPlayMatrix exact = ExactCrossPlay(tree, ps, labels);
  const CrossPlayMatrix sampled = SampledCrossPlay(*env, ps, labels, 4000, 9);
  for (size_t i = 0; i < 2; ++i) {
    for (size_t j = 0; j < 2; ++j) {
      CHECK(std::abs(sampled.mean[i][j] - exact.mean[i][j]) < 0.5);
      CHECK(sampled.se[i][j] >= 0.0);
    }
  }
  CHECK(sampled.mode == "sampled");
  CHECK(sampled.episodes == 4000);
}

TEST_CASE("growing the policy set keeps existing sampled cells") {
  const EnvPtr env = MakeToyGame();
  const SelfplayResult a = Convention(*env, 1);
  const SelfplayResult b = Convention(*env, 2);
  const Policy u = [&] {
    const GameTree tree = GameTree::Enumerate(*env);
    return UniformPolicy(tree);
  }();

  const CrossPlayMatrix two =
      SampledCrossPlay(*env, {&a.greedy, &b.greedy}, {"a", "b"}, 500, 77);
  const CrossPlayMatrix three = SampledCrossPlay(
      *env, {&a.greedy, &b.greedy, &u}, {"a", "b", "u"}, 500, 77);
  // Cell (i, j) draws from a stream keyed by (i, j), not by matrix size.
  CHECK(two.mean[0][0] == three.mean[0][0]);
  CHECK(two.mean[0][1] == three.mean[0][1]);
  CHECK(two.mean[1][0] == three.mean[1][0]);
  CHECK(two.mean[1][1] == three.mean[1][1]);
}

TEST_CASE("csv and json renderings carry the whole matrix") {
  const EnvPtr env = MakeToyGame();
  const GameTree tree = GameTree::Enumerate(*env);
  const Policy uniform = UniformPolicy(tree);
  const CrossPlayMatrix m = ExactCrossPlay(tree, {&uniform}, {"u"});

  const std::string csv = CrossPlayCsv(m);
  CHECK(csv.find("seat0\\seat1,u") == 0);
  CHECK(csv.find("\nu,") != std::string::npos);

  const auto doc = nlohmann::json::parse(CrossPlayJson(m));
  CHECK(doc["labels"] == nlohmann::json::array({"u"}));
  CHECK(doc["mode"] == "exact");
  CHECK(doc["mean"][0][0].get<double>() == doctest::Approx(m.mean[0][0]));
}

TEST_CASE("shape mistakes are usage errors") {
  const EnvPtr env = MakeToyGame();
  const GameTree tree = GameTree::Enumerate(*env);
  const Policy uniform = UniformPolicy(tree);

  CHECK_THROWS_AS(ExactCrossPlay(tree, {}, {}), UsageError);
  CHECK_THROWS_AS(ExactCrossPlay(tree, {&uniform}, {"a", "b"}), UsageError);
  CHECK_THROWS_AS(ExactCrossPlay(tree, {nullptr}, {"a"}), UsageError);
  CHECK_THROWS_AS(SampledCrossPlay(*env, {&uniform}, {"u"}, 0, 1), UsageError);
}

}  // namespace obl
