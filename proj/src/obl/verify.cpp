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

#include "obl/verify.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "obl/belief.h"
#include "obl/env.h"
#include "obl/err.h"
#include "obl/random_game.h"
#include "obl/solver.h"
#include "obl/toy_game.h"
#include "obl/tree.h"
#include "obl/util.h"

namespace obl {

namespace {

constexpr double kEuler = std::numbers::e;

Policy RandomFullSupportPolicy(const GameTree& tree, uint64_t seed) {
  Rng rng(seed);
  Policy out;
  out.name = "random" + std::to_string(seed);
  for (const auto& g : tree.groups()) {
    if (!g.acting) continue;
    std::vector<double> w(g.legal.size());
    double total = 0.0;
    for (double& x : w) {
      x = 0.1 + rng.Uniform();
      total += x;
    }
    ActionDist dist;
    for (size_t i = 0; i < g.legal.size(); ++i) {
      dist.emplace_back(g.legal[i], w[i] / total);
    }
    out.Set(g.key, std::move(dist));
  }
  return out;
}

// Largest per-key distance between two policies over the same key set.
double MaxPolicyTv(const Policy& a, const Policy& b) {
  double worst = 0.0;
  for (const auto& [key, dist] : a.table()) {
    const ActionDist* other = b.Find(key);
    OBL_CHECK(other != nullptr, UsageError, "policies cover different keys");
    worst = std::max(worst, TvDistance(dist, *other));
  }
  return worst;
}

std::string FormatWorst(double worst) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << worst;
  return os.str();
}

VerificationReport OrderInvariance(uint64_t seed) {
  VerificationReport rep;
  rep.suite = "order-invariance";
  rep.bound = 1e-12;
  const double temps[] = {0.05, 0.5};
  const uint64_t shuffles[] = {0, 1, 424242};

  std::vector<EnvPtr> envs;
  envs.push_back(MakeToyGame());
  for (int i = 0; i < 50; ++i) envs.push_back(MakeRandomGame(ChildSeed(seed, "game", i)));

  double worst = 0.0;
  for (size_t gi = 0; gi < envs.size(); ++gi) {
    GameTree tree = GameTree::Enumerate(*envs[gi]);
    Policy pi0 = RandomFullSupportPolicy(tree, ChildSeed(seed, "pi0", gi));
    for (double t : temps) {
      SolveOptions opts;
      opts.temperature = t;
      std::vector<OblResult> runs;
      for (uint64_t sh : shuffles) {
        opts.shuffle_seed = sh;
        runs.push_back(OblOperator(tree, pi0, opts));
      }
      for (size_t k = 1; k < runs.size(); ++k) {
        worst = std::max(worst, MaxPolicyTv(runs[0].policy, runs[k].policy));
        worst = std::max(worst, std::abs(runs[0].joint - runs[k].joint));
      }
      ++rep.instances;
    }
  }
  rep.max_violation = worst;
  rep.pass = worst <= rep.bound;
  rep.detail = std::to_string(envs.size()) + " games, 2 temperatures, 3 orders; worst gap " +
               FormatWorst(worst);
  return rep;
}

VerificationReport PolicyImprovement(uint64_t seed) {
  VerificationReport rep;
  rep.suite = "policy-improvement";
  rep.bound = 1e-9;
  const double temps[] = {0.05, 0.5};

  double worst = -1e300;
  for (int i = 0; i < 100; ++i) {
    EnvPtr env = MakeRandomGame(ChildSeed(seed, "game", i));
    GameTree tree = GameTree::Enumerate(*env);
    Policy pi0 = RandomFullSupportPolicy(tree, ChildSeed(seed, "pi0", i));
    double j0 = PolicyValue(tree, pi0).joint;
    double t_max = env->MaxGameLength();
    for (double t : temps) {
      SolveOptions opts;
      opts.temperature = t;
      OblResult res = OblOperator(tree, pi0, opts);
      // j1 may undercut j0 by at most the exploration bonus.
      worst = std::max(worst, j0 - kEuler * t * t_max - res.joint);
      ++rep.instances;
    }
  }
  rep.max_violation = worst;
  rep.pass = worst <= rep.bound;
  rep.detail = "100 games, 2 temperatures; worst slack use " + FormatWorst(worst);
  return rep;
}

VerificationReport FixedPointBrGap(uint64_t seed) {
  VerificationReport rep;
  rep.suite = "fixed-point-br-gap";
  rep.bound = 1e-9;
  const double t = 0.1;
  const int max_levels = 200;
  const double converge_tol = 1e-9;

  std::vector<EnvPtr> envs;
  envs.push_back(MakeToyGame());
  for (int i = 0; i < 30; ++i) envs.push_back(MakeRandomGame(ChildSeed(seed, "game", i)));

  double worst = -1e300;
  int converged = 0, skipped = 0;
  for (size_t gi = 0; gi < envs.size(); ++gi) {
    const DecPomdp& env = *envs[gi];
    GameTree tree = GameTree::Enumerate(env);
    SolveOptions opts;
    opts.temperature = t;

    Policy cur = UniformPolicy(tree);
    bool done = false;
    for (int lvl = 0; lvl < max_levels; ++lvl) {
      OblResult next = OblOperator(tree, cur, opts);
      double delta = MaxPolicyTv(cur, next.policy);
      cur = std::move(next.policy);
      if (delta < converge_tol && lvl > 0) {
        done = true;
        break;
      }
    }
    if (!done) {
      ++skipped;
      continue;
    }
    ++converged;

    ValueResult v = PolicyValue(tree, cur);
    double t_max = env.MaxGameLength();
    for (int player = 0; player < env.NumPlayers(); ++player) {
      auto reach = ReachUnder(tree, cur, player);
      SolveOptions br_opts;
      BestResponseResult br = BestResponse(tree, cur, player, br_opts);
      for (size_t gid = 0; gid < tree.groups().size(); ++gid) {
        const AohGroup& g = tree.group(static_cast<int>(gid));
        if (!g.acting || g.player != player) continue;
        BeliefDistribution belief = TrembleBelief(tree, reach, static_cast<int>(gid));
        double br_v = 0.0, pi_v = 0.0;
        for (const auto& [node, b] : belief.support) {
          br_v += b * br.value[node];
          pi_v += b * v.node_value[node];
        }
        double allowance = kEuler * t * (t_max - static_cast<double>(g.depth));
        worst = std::max(worst, br_v - pi_v - allowance);
        ++rep.instances;
      }
    }
  }
  rep.max_violation = worst;
  rep.pass = converged > 0 && worst <= rep.bound;
  rep.detail = std::to_string(converged) + " fixed points (" + std::to_string(skipped) +
               " skipped unconverged); worst gap above allowance " + FormatWorst(worst);
  return rep;
}

VerificationReport GroundedEquivalence(uint64_t seed) {
  (void)seed;
  VerificationReport rep;
  rep.suite = "grounded-equivalence";
  rep.bound = 1e-12;

  std::vector<EnvPtr> envs;
  envs.push_back(MakeToyGame());
  EnvConfig micro = PresetConfig("hanabi_micro");
  envs.push_back(BuildEnv(micro));

  double worst = 0.0;
  for (const auto& env : envs) {
    GameTree tree = GameTree::Enumerate(*env);
    Policy uniform = UniformPolicy(tree);
    SolveOptions opts;
    OblResult counterfactual = OblOperator(tree, uniform, opts);
    opts.belief_mode = BeliefMode::kGrounded;
    OblResult grounded = OblOperator(tree, uniform, opts);
    worst = std::max(worst, MaxPolicyTv(counterfactual.policy, grounded.policy));
    worst = std::max(worst, std::abs(counterfactual.joint - grounded.joint));
    ++rep.instances;
  }
  rep.max_violation = worst;
  rep.pass = worst <= rep.bound;
  rep.detail = "2 envs with information-blind uniform base; worst gap " + FormatWorst(worst);
  return rep;
}

VerificationReport JointAohValue(uint64_t seed) {
  VerificationReport rep;
  rep.suite = "joint-aoh-value";
  rep.bound = 1e-10;

  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    EnvPtr env = MakeRandomGame(ChildSeed(seed, "game", i));
    GameTree tree = GameTree::Enumerate(*env);
    Policy pi0 = RandomFullSupportPolicy(tree, ChildSeed(seed, "pi0", i));
    Policy pi1 = RandomFullSupportPolicy(tree, ChildSeed(seed, "pi1", i));

    auto reach = ReachUnder(tree, pi0);
    std::vector<double> v1 = PolicyValue(tree, pi1).node_value;
    auto reach_prob = [&](int node) {
      return reach[node].zeros > 0 ? 0.0 : reach[node].weight;
    };

    for (int d = 0; d <= tree.max_depth(); ++d) {
      double lhs = 0.0;
      for (int n : tree.nodes_by_depth()[d]) lhs += reach_prob(n) * v1[n];
      for (int player = 0; player < env->NumPlayers(); ++player) {
        double rhs = 0.0;
        for (int gid : tree.groups_by_depth()[d]) {
          const AohGroup& g = tree.group(gid);
          if (g.player != player) continue;
          double mass = 0.0;
          for (int n : g.nodes) mass += reach_prob(n);
          if (mass == 0.0) continue;
          BeliefDistribution belief = ExactBelief(tree, reach, gid);
          double group_value = 0.0;
          for (const auto& [node, b] : belief.support) group_value += b * v1[node];
          rhs += mass * group_value;
        }
        worst = std::max(worst, std::abs(lhs - rhs));
        ++rep.instances;
      }
    }
  }
  rep.max_violation = worst;
  rep.pass = worst <= rep.bound;
  rep.detail = "20 games, every depth and seat; worst mismatch " + FormatWorst(worst);
  return rep;
}

VerificationReport SoftmaxValueBound(uint64_t seed) {
  VerificationReport rep;
  rep.suite = "softmax-value-bound";
  rep.bound = 1e-12;
  const double temps[] = {0.01, 0.1, 1.0, 10.0};

  Rng rng(ChildSeed(seed, "vectors"));
  double worst = -1e300;
  for (int i = 0; i < 1000; ++i) {
    int dim = 2 + rng.UniformInt(9);
    std::vector<double> q(dim);
    for (double& x : q) x = rng.Uniform(-20.0, 20.0);
    double best = *std::max_element(q.begin(), q.end());
    for (double t : temps) {
      std::vector<double> dist = SoftmaxDist(q, t, TieBreak::kLowestIndex, nullptr);
      double mean = 0.0;
      for (int k = 0; k < dim; ++k) mean += dist[k] * q[k];
      worst = std::max(worst, best - mean - kEuler * t);
      ++rep.instances;
    }
  }
  rep.max_violation = worst;
  rep.pass = worst <= rep.bound;
  rep.detail = "1000 vectors, 4 temperatures; worst slack use " + FormatWorst(worst);
  return rep;
}

}  // namespace

std::vector<std::string> VerifySuiteNames() {
  return {"order-invariance",     "policy-improvement", "fixed-point-br-gap",
          "grounded-equivalence", "joint-aoh-value",    "softmax-value-bound"};
}

VerificationReport RunVerifySuite(const std::string& suite, uint64_t seed) {
  if (suite == "order-invariance") return OrderInvariance(seed);
  if (suite == "policy-improvement") return PolicyImprovement(seed);
  if (suite == "fixed-point-br-gap") return FixedPointBrGap(seed);
  if (suite == "grounded-equivalence") return GroundedEquivalence(seed);
  if (suite == "joint-aoh-value") return JointAohValue(seed);
  if (suite == "softmax-value-bound") return SoftmaxValueBound(seed);
  throw UsageError("unknown verify suite: " + suite);
}

std::string VerifyReportJson(const VerificationReport& r) {
  nlohmann::json doc;
  doc["format"] = "obl.verify/1";
  doc["suite"] = r.suite;
  doc["instances"] = r.instances;
  doc["max_violation"] = r.max_violation;
  doc["bound"] = r.bound;
  doc["pass"] = r.pass;
  doc["detail"] = r.detail;
  return doc.dump(1) + "\n";
}

}  // namespace obl
