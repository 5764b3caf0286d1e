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

#include "obl/selfplay.h"

#include <string>
#include <utility>

#include "obl/aoh.h"
#include "obl/err.h"
#include "obl/rollout.h"
#include "obl/solver.h"

namespace obl {

namespace {

// A decision waiting for its bootstrap: the accumulator gathers every reward
// the team earns until the same seat decides again (or the episode ends).
struct Pending {
  std::string key;
  int action = -1;
  double acc = 0.0;
  bool live = false;
};

void EnsureOptimisticInit(QTable& q, const std::string& key,
                          const std::vector<int>& legal, Rng& rng,
                          const SelfplayOptions& opts) {
  if (q.Find(key) != nullptr) return;
  auto& entry = q.At(key);
  for (int a : legal) entry.q[a] = rng.Uniform(opts.init_lo, opts.init_hi);
}

int ArgmaxStored(const QTable& q, const std::string& key) {
  const QTable::Entry* e = q.Find(key);
  OBL_CHECK(e != nullptr && !e->q.empty(), UsageError,
            "argmax over an uninitialized entry at " + key);
  int best = e->q.begin()->first;
  double best_v = e->q.begin()->second;
  for (const auto& [a, v] : e->q) {
    if (v > best_v) { best = a; best_v = v; }
  }
  return best;
}

void ApplyUpdate(QTable& q, const Pending& pd, double bootstrap, double lr) {
  auto& entry = q.At(pd.key);
  double& value = entry.q[pd.action];
  value += lr * (pd.acc + bootstrap - value);
  ++entry.visits[pd.action];
}

double MaxStored(const QTable& q, const std::string& key) {
  const QTable::Entry* e = q.Find(key);
  OBL_CHECK(e != nullptr && !e->q.empty(), UsageError,
            "max over an uninitialized entry at " + key);
  double best = e->q.begin()->second;
  for (const auto& [a, v] : e->q) {
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

double EpsilonAt(uint64_t episode, uint64_t total, double start, double end,
                 double frac) {
  double span = static_cast<double>(total) * frac;
  if (span <= 0.0) return end;
  double t = static_cast<double>(episode) / span;
  if (t >= 1.0) return end;
  return start + (end - start) * t;
}

SelfplayResult SelfplayTrain(const DecPomdp& env, const SelfplayOptions& opts) {
  Rng rng(opts.seed);
  SelfplayResult out;
  if (opts.warm_start != nullptr) out.q = *opts.warm_start;
  out.q.name = "selfplay";

  const int players = env.NumPlayers();
  for (uint64_t ep = 0; ep < opts.episodes; ++ep) {
    double eps = EpsilonAt(ep, opts.episodes, opts.eps_start, opts.eps_end,
                           opts.eps_anneal_frac);
    StatePtr s = SampleInitial(env, rng);
    std::vector<Aoh> aohs;
    aohs.reserve(players);
    for (int p = 0; p < players; ++p) {
      aohs.emplace_back(p);
      aohs[p].AddObservation(env.Observation(*s, p));
    }
    std::vector<Pending> pend(players);

    while (!env.IsTerminal(*s)) {
      int actor = env.ActingPlayer(*s);
      std::vector<int> legal = env.LegalActions(*s);
      const std::string key = aohs[actor].Key();
      EnsureOptimisticInit(out.q, key, legal, rng, opts);

      if (pend[actor].live) {
        ApplyUpdate(out.q, pend[actor], MaxStored(out.q, key), opts.lr);
      }
      int a = rng.Uniform() < eps
                  ? legal[rng.UniformInt(static_cast<int>(legal.size()))]
                  : ArgmaxStored(out.q, key);
      pend[actor] = Pending{key, a, 0.0, true};

      double r = env.Reward(*s, a);
      StatePtr next = SampleNext(env, *s, a, rng);
      for (int p = 0; p < players; ++p) {
        aohs[p].AddAction(a, env.ActionVisibleTo(*s, actor, p));
        aohs[p].AddObservation(env.Observation(*next, p));
        if (pend[p].live) pend[p].acc += r;
      }
      s = std::move(next);
    }
    for (const auto& pd : pend) {
      if (pd.live) ApplyUpdate(out.q, pd, 0.0, opts.lr);
    }

    if (opts.eval_interval > 0 &&
        ((ep + 1) % opts.eval_interval == 0 || ep + 1 == opts.episodes)) {
      Policy greedy = GreedyFromQ(out.q);
      CurvePoint pt;
      pt.episode = ep + 1;
      pt.eval = opts.eval_tree != nullptr
                    ? PolicyValue(*opts.eval_tree, greedy).joint
                    : MeanReturn(env, greedy, opts.eval_episodes,
                                 ChildSeed(opts.seed, "eval", ep + 1));
      out.curve.push_back(pt);
    }
  }

  out.greedy = GreedyFromQ(out.q);
  out.greedy.name = "selfplay";
  return out;
}

}  // namespace obl
