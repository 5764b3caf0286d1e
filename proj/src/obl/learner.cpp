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

#include "obl/learner.h"

#include <algorithm>
#include <utility>

#include "obl/aoh.h"
#include "obl/err.h"
#include "obl/replay.h"
#include "obl/rollout.h"
#include "obl/solver.h"

namespace obl {

namespace {

void EnsureZeroInit(QTable& q, const std::string& key,
                    const std::vector<int>& legal) {
  if (q.Find(key) != nullptr) return;
  auto& entry = q.At(key);
  for (int a : legal) entry.q[a] = 0.0;
}

// Greedy action under the snapshot; keys the snapshot has never scored fall
// back to a uniform draw.
int SnapshotAction(const QTable& snapshot, const std::string& key,
                   const std::vector<int>& legal, Rng& rng) {
  const QTable::Entry* e = snapshot.Find(key);
  if (e == nullptr || e->q.empty()) {
    return legal[rng.UniformInt(static_cast<int>(legal.size()))];
  }
  int best = e->q.begin()->first;
  double best_v = e->q.begin()->second;
  for (const auto& [a, v] : e->q) {
    if (v > best_v) { best = a; best_v = v; }
  }
  return best;
}

double SnapshotMax(const QTable& snapshot, const std::string& key) {
  const QTable::Entry* e = snapshot.Find(key);
  if (e == nullptr || e->q.empty()) return 0.0;
  double best = e->q.begin()->second;
  for (const auto& [a, v] : e->q) {
    if (v > best) best = v;
  }
  return best;
}

int GreedyLiveAction(const QTable& q, const std::string& key) {
  const QTable::Entry* e = q.Find(key);
  OBL_CHECK(e != nullptr && !e->q.empty(), UsageError,
            "greedy over an uninitialized entry at " + key);
  int best = e->q.begin()->first;
  double best_v = e->q.begin()->second;
  for (const auto& [a, v] : e->q) {
    if (v > best_v) { best = a; best_v = v; }
  }
  return best;
}

// Plays the fictitious window: from `start`, apply `action`, then let every
// seat follow the greedy snapshot until the rollout may stop at one of
// `actor`'s decision points. Returns the accumulated fictitious reward plus
// the snapshot bootstrap (terminal states bootstrap to zero).
double FictitiousTarget(const DecPomdp& env, const GameState& start, int actor,
                        int action, const std::vector<Aoh>& prefix,
                        const QTable& snapshot, int min_steps, Rng& rng) {
  std::vector<Aoh> aohs = prefix;
  StatePtr cur = SampleNext(env, start, action, rng);
  double acc = env.Reward(start, action);
  {
    const GameState& from = start;
    for (int p = 0; p < env.NumPlayers(); ++p) {
      aohs[p].AddAction(action, env.ActionVisibleTo(from, actor, p));
      aohs[p].AddObservation(env.Observation(*cur, p));
    }
  }
  int steps = 1;
  while (!env.IsTerminal(*cur)) {
    int turn = env.ActingPlayer(*cur);
    if (turn == actor && steps >= std::max(min_steps, 1)) {
      return acc + SnapshotMax(snapshot, aohs[actor].Key());
    }
    std::vector<int> legal = env.LegalActions(*cur);
    int a = SnapshotAction(snapshot, aohs[turn].Key(), legal, rng);
    acc += env.Reward(*cur, a);
    StatePtr next = SampleNext(env, *cur, a, rng);
    for (int p = 0; p < env.NumPlayers(); ++p) {
      aohs[p].AddAction(a, env.ActionVisibleTo(*cur, turn, p));
      aohs[p].AddObservation(env.Observation(*next, p));
    }
    cur = std::move(next);
    ++steps;
  }
  return acc;
}

void ReplayUpdate(QTable& q, const ReplayEntry& entry, double lr) {
  for (const auto& step : entry.steps) {
    auto& e = q.At(step.key);
    uint64_t& n = e.visits[step.action];
    ++n;
    double step_lr = lr > 0.0 ? lr : 1.0 / static_cast<double>(n);
    double& value = e.q[step.action];
    value += step_lr * (step.target - value);
  }
}

void MaybeEval(const DecPomdp& env, const LearnerOptions& opts, uint64_t done,
               const QTable& q, std::vector<CurvePoint>* curve) {
  if (opts.eval_interval == 0) return;
  if (done % opts.eval_interval != 0 && done != opts.episodes) return;
  CurvePoint pt;
  pt.episode = done;
  Policy greedy = GreedyFromQ(q);
  pt.eval = opts.eval_tree != nullptr
                ? PolicyValue(*opts.eval_tree, greedy).joint
                : MeanReturn(env, greedy, opts.eval_episodes,
                             ChildSeed(opts.seed, "eval", done));
  if (opts.oracle != nullptr) {
    pt.oracle_distance = OracleDistance(q, *opts.oracle, opts.oracle_min_visits);
  }
  curve->push_back(pt);
}

enum class Mode { kBasePolicy, kBeliefSampled };

LearnerResult TrainLoop(const DecPomdp& env, const Policy* pi0,
                        const CountBeliefModel* belief, Mode mode,
                        const LearnerOptions& opts) {
  OBL_CHECK(opts.batch_size > 0, UsageError, "batch_size must be positive");
  OBL_CHECK(opts.sync_interval > 0, UsageError, "sync_interval must be positive");
  Rng rng(opts.seed);
  LearnerResult out;
  if (opts.warm_start != nullptr) out.q = *opts.warm_start;
  out.q.name = mode == Mode::kBasePolicy ? "qobl" : "lbobl";

  ReplayBuffer buffer(opts.replay_capacity);
  QTable snapshot;  // starts empty: bootstraps read as zero
  uint64_t generation = 0;

  const int players = env.NumPlayers();
  std::vector<double> on_policy_hits;
  std::vector<uint64_t> depth_visits;

  for (uint64_t ep = 0; ep < opts.episodes; ++ep) {
    if (ep > 0 && ep % opts.sync_interval == 0) {
      snapshot = out.q;
      ++generation;
    }
    double eps = EpsilonAt(ep, opts.episodes, opts.eps_start, opts.eps_end,
                           opts.eps_anneal_frac);

    StatePtr s = SampleInitial(env, rng);
    std::vector<Aoh> aohs;
    aohs.reserve(players);
    for (int p = 0; p < players; ++p) {
      aohs.emplace_back(p);
      aohs[p].AddObservation(env.Observation(*s, p));
    }

    ReplayEntry entry;
    entry.generation = generation;
    bool prefix_on_policy = true;
    int depth = 0;

    while (!env.IsTerminal(*s)) {
      int actor = env.ActingPlayer(*s);
      std::vector<int> legal = env.LegalActions(*s);
      const std::string key = aohs[actor].Key();
      EnsureZeroInit(out.q, key, legal);

      int a;
      if (mode == Mode::kBasePolicy) {
        auto probs = pi0->ProbsAt(key, legal);
        a = legal[rng.SampleIndex(probs)];
      } else {
        a = rng.Uniform() < eps
                ? legal[rng.UniformInt(static_cast<int>(legal.size()))]
                : GreedyLiveAction(out.q, key);
      }

      if (static_cast<size_t>(depth) >= on_policy_hits.size()) {
        on_policy_hits.resize(depth + 1, 0.0);
        depth_visits.resize(depth + 1, 0);
      }
      // A state counts as on-policy when every decision before it was the
      // greedy one; the current action only affects deeper states.
      if (prefix_on_policy) on_policy_hits[depth] += 1.0;
      ++depth_visits[depth];
      if (a != GreedyLiveAction(out.q, key)) prefix_on_policy = false;

      const GameState* roll_start = s.get();
      StatePtr resampled;
      if (mode == Mode::kBeliefSampled) {
        resampled = belief->SampleStateFrom(env, *s, actor, key, rng);
        if (opts.check_fictitious_consistency) {
          OBL_CHECK(env.Observation(*resampled, actor) == env.Observation(*s, actor),
                    InconsistentHistoryError,
                    "belief sample breaks the actor's observation at " + key);
          OBL_CHECK(env.LegalActions(*resampled) == legal,
                    InconsistentHistoryError,
                    "belief sample changes the legal set at " + key);
        }
        roll_start = resampled.get();
      }
      double target = FictitiousTarget(env, *roll_start, actor, a, aohs,
                                       snapshot, opts.bootstrap_steps, rng);
      entry.steps.push_back(ReplayStep{key, a, target});

      StatePtr next = SampleNext(env, *s, a, rng);
      for (int p = 0; p < players; ++p) {
        aohs[p].AddAction(a, env.ActionVisibleTo(*s, actor, p));
        aohs[p].AddObservation(env.Observation(*next, p));
      }
      s = std::move(next);
      ++depth;
    }

    buffer.Push(std::move(entry));
    for (int b = 0; b < opts.batch_size; ++b) {
      ReplayUpdate(out.q, buffer.Sample(rng), opts.lr);
    }

    MaybeEval(env, opts, ep + 1, out.q, &out.curve);
  }

  out.greedy = GreedyFromQ(out.q);
  out.greedy.name = out.q.name;
  out.mean_reuse = buffer.MeanReuse();
  out.generations = generation;
  out.on_policy_fraction.resize(depth_visits.size(), 0.0);
  for (size_t d = 0; d < depth_visits.size(); ++d) {
    if (depth_visits[d] > 0) {
      out.on_policy_fraction[d] = on_policy_hits[d] / static_cast<double>(depth_visits[d]);
    }
  }
  return out;
}

}  // namespace

LearnerResult QOblTrain(const DecPomdp& env, const Policy& pi0,
                        const LearnerOptions& opts) {
  return TrainLoop(env, &pi0, nullptr, Mode::kBasePolicy, opts);
}

LearnerResult LbOblTrain(const DecPomdp& env, const CountBeliefModel& belief,
                         const LearnerOptions& opts) {
  return TrainLoop(env, nullptr, &belief, Mode::kBeliefSampled, opts);
}

double OracleDistance(const QTable& q, const Policy& oracle,
                      uint64_t min_visits) {
  Policy greedy = GreedyFromQ(q);
  double worst = -1.0;
  for (const auto& [key, dist] : greedy.table()) {
    if (q.Visits(key) < min_visits) continue;
    const ActionDist* ref = oracle.Find(key);
    if (ref == nullptr) continue;
    worst = std::max(worst, TvDistance(dist, *ref));
  }
  return worst;
}

}  // namespace obl
