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

#include "obl/solver.h"

#include <algorithm>
#include <cmath>

#include "obl/err.h"

namespace obl {
namespace {

// Expected one-step value of taking the k-th legal action at a history:
// reward plus the chance-weighted continuation.
double ActionValue(const GameTree& tree, int node_id, size_t k,
                   const std::vector<double>& value) {
  const TreeNode& n = tree.node(node_id);
  double v = 0.0;
  for (const auto& [child, p] : n.children[k]) {
    v += p * (tree.node(child).reward_in + value[child]);
  }
  return v;
}

int CountTies(const std::vector<double>& q) {
  double best = *std::max_element(q.begin(), q.end());
  return static_cast<int>(std::count(q.begin(), q.end(), best));
}

double JointFromRoots(const GameTree& tree, const std::vector<double>& value) {
  double joint = 0.0;
  for (int r : tree.roots()) joint += tree.node(r).chance_in * value[r];
  return joint;
}

ActionDist ZipDist(const std::vector<int>& legal, const std::vector<double>& probs) {
  ActionDist dist;
  dist.reserve(legal.size());
  for (size_t i = 0; i < legal.size(); ++i) dist.emplace_back(legal[i], probs[i]);
  return dist;
}

void MaybeShuffle(std::vector<int>* ids, uint64_t seed, const char* label, int depth) {
  if (seed == 0) return;
  Rng rng(ChildSeed(seed, label, static_cast<uint64_t>(depth)));
  for (size_t i = ids->size(); i > 1; --i) {
    std::swap((*ids)[i - 1], (*ids)[rng.UniformInt(static_cast<int>(i))]);
  }
}

}  // namespace

std::vector<double> SoftmaxDist(const std::vector<double>& q, double temperature,
                                TieBreak tie, Rng* rng) {
  OBL_CHECK(!q.empty(), UsageError, "empty value vector");
  OBL_CHECK(temperature >= 0.0, UsageError, "negative temperature");
  std::vector<double> dist(q.size(), 0.0);
  if (temperature == 0.0) {
    double best = *std::max_element(q.begin(), q.end());
    std::vector<size_t> ties;
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == best) ties.push_back(i);
    }
    size_t pick = ties.front();
    if (tie == TieBreak::kSeededRandom && ties.size() > 1) {
      OBL_CHECK(rng != nullptr, UsageError, "seeded tie break needs an rng");
      pick = ties[rng->UniformInt(static_cast<int>(ties.size()))];
    }
    dist[pick] = 1.0;
    return dist;
  }
  double m = *std::max_element(q.begin(), q.end());
  double total = 0.0;
  for (size_t i = 0; i < q.size(); ++i) {
    dist[i] = std::exp((q[i] - m) / temperature);
    total += dist[i];
  }
  for (double& p : dist) p /= total;
  return dist;
}

ValueResult JointValue(const GameTree& tree, const std::vector<const Policy*>& by_player) {
  OBL_CHECK(static_cast<int>(by_player.size()) == tree.env().NumPlayers(),
            UsageError, "one policy per player required");
  const auto& nodes = tree.nodes();
  ValueResult res;
  res.node_value.assign(nodes.size(), 0.0);
  std::vector<std::vector<double>> probs(tree.groups().size());
  for (size_t i = nodes.size(); i-- > 0;) {
    const TreeNode& n = nodes[i];
    if (n.terminal) continue;
    int gid = n.aoh[n.player];
    if (probs[gid].empty()) {
      probs[gid] = by_player[n.player]->ProbsAt(tree.group(gid).key, n.legal);
    }
    double v = 0.0;
    for (size_t k = 0; k < n.legal.size(); ++k) {
      if (probs[gid][k] == 0.0) continue;
      v += probs[gid][k] * ActionValue(tree, static_cast<int>(i), k, res.node_value);
    }
    res.node_value[i] = v;
  }
  res.joint = JointFromRoots(tree, res.node_value);
  return res;
}

ValueResult PolicyValue(const GameTree& tree, const Policy& policy) {
  std::vector<const Policy*> by_player(tree.env().NumPlayers(), &policy);
  return JointValue(tree, by_player);
}

OblResult OblOperator(const GameTree& tree, const Policy& pi0, const SolveOptions& opts) {
  auto reach = ReachUnder(tree, pi0);
  OblResult res;
  res.policy.name = pi0.name + "+obl";
  res.policy.env_hash = pi0.env_hash;
  res.value.assign(tree.nodes().size(), 0.0);
  std::vector<std::vector<double>> dist_by_gid(tree.groups().size());

  for (int d = tree.max_depth(); d >= 0; --d) {
    std::vector<int> gids;
    for (int gid : tree.groups_by_depth()[d]) {
      if (tree.group(gid).acting) gids.push_back(gid);
    }
    MaybeShuffle(&gids, opts.shuffle_seed, "groups", d);
    for (int gid : gids) {
      const AohGroup& g = tree.group(gid);
      BeliefDistribution belief = opts.belief_mode == BeliefMode::kGrounded
                                      ? GroundedBelief(tree, gid)
                                      : TrembleBelief(tree, reach, gid);
      GroupQ gq;
      gq.trembled = opts.belief_mode == BeliefMode::kCounterfactual &&
                    reach[belief.support.front().first].zeros > 0;
      if (gq.trembled) ++res.trembled_groups;
      gq.q.assign(g.legal.size(), 0.0);
      for (const auto& [node, b] : belief.support) {
        for (size_t k = 0; k < g.legal.size(); ++k) {
          gq.q[k] += b * ActionValue(tree, node, k, res.value);
        }
      }
      gq.num_ties = CountTies(gq.q);
      Rng tie_rng(ChildSeed(opts.tie_seed, g.key));
      std::vector<double> dist =
          SoftmaxDist(gq.q, opts.temperature, opts.tie_break, &tie_rng);
      res.policy.Set(g.key, ZipDist(g.legal, dist));
      res.q.emplace(g.key, std::move(gq));
      dist_by_gid[gid] = std::move(dist);
    }

    std::vector<int> nids = tree.nodes_by_depth()[d];
    MaybeShuffle(&nids, opts.shuffle_seed, "nodes", d);
    for (int i : nids) {
      const TreeNode& n = tree.node(i);
      if (n.terminal) continue;
      const auto& dist = dist_by_gid[n.aoh[n.player]];
      double v = 0.0;
      for (size_t k = 0; k < n.legal.size(); ++k) {
        if (dist[k] == 0.0) continue;
        v += dist[k] * ActionValue(tree, i, k, res.value);
      }
      res.value[i] = v;
    }
  }
  res.joint = JointFromRoots(tree, res.value);
  return res;
}

std::vector<OblResult> OblHierarchy(const GameTree& tree, const Policy& pi0,
                                    int levels, const SolveOptions& opts) {
  OBL_CHECK(levels >= 1, UsageError, "need at least one level");
  std::vector<OblResult> out;
  const Policy* base = &pi0;
  for (int k = 0; k < levels; ++k) {
    out.push_back(OblOperator(tree, *base, opts));
    base = &out.back().policy;
  }
  return out;
}

CounterfactualResult CounterfactualQ(const GameTree& tree, const Policy& pi0,
                                     const Policy& pi1) {
  CounterfactualResult res;
  res.pi1_value = PolicyValue(tree, pi1).node_value;
  auto reach = ReachUnder(tree, pi0);
  for (size_t gid = 0; gid < tree.groups().size(); ++gid) {
    const AohGroup& g = tree.group(static_cast<int>(gid));
    if (!g.acting) continue;
    BeliefDistribution belief = TrembleBelief(tree, reach, static_cast<int>(gid));
    GroupQ gq;
    gq.trembled = reach[belief.support.front().first].zeros > 0;
    gq.q.assign(g.legal.size(), 0.0);
    for (const auto& [node, b] : belief.support) {
      for (size_t k = 0; k < g.legal.size(); ++k) {
        gq.q[k] += b * ActionValue(tree, node, k, res.pi1_value);
      }
    }
    gq.num_ties = CountTies(gq.q);
    res.q.emplace(g.key, std::move(gq));
  }
  return res;
}

BestResponseResult BestResponse(const GameTree& tree, const Policy& partner,
                                int player, const SolveOptions& opts) {
  OBL_CHECK(player >= 0 && player < tree.env().NumPlayers(), UsageError,
            "player out of range");
  auto reach = ReachUnder(tree, partner, player);
  BestResponseResult res;
  res.policy.name = partner.name + "+br" + std::to_string(player);
  res.policy.env_hash = partner.env_hash;
  res.value.assign(tree.nodes().size(), 0.0);
  std::vector<std::vector<double>> dist_by_gid(tree.groups().size());

  for (int d = tree.max_depth(); d >= 0; --d) {
    for (int gid : tree.groups_by_depth()[d]) {
      const AohGroup& g = tree.group(gid);
      if (!g.acting || g.player != player) continue;
      BeliefDistribution belief = TrembleBelief(tree, reach, gid);
      std::vector<double> q(g.legal.size(), 0.0);
      for (const auto& [node, b] : belief.support) {
        for (size_t k = 0; k < g.legal.size(); ++k) {
          q[k] += b * ActionValue(tree, node, k, res.value);
        }
      }
      Rng tie_rng(ChildSeed(opts.tie_seed, g.key));
      std::vector<double> dist = SoftmaxDist(q, 0.0, opts.tie_break, &tie_rng);
      res.policy.Set(g.key, ZipDist(g.legal, dist));
      dist_by_gid[gid] = std::move(dist);
    }

    for (int i : tree.nodes_by_depth()[d]) {
      const TreeNode& n = tree.node(i);
      if (n.terminal) continue;
      int gid = n.aoh[n.player];
      if (n.player != player && dist_by_gid[gid].empty()) {
        dist_by_gid[gid] = partner.ProbsAt(tree.group(gid).key, n.legal);
      }
      const auto& dist = dist_by_gid[gid];
      double v = 0.0;
      for (size_t k = 0; k < n.legal.size(); ++k) {
        if (dist[k] == 0.0) continue;
        v += dist[k] * ActionValue(tree, i, k, res.value);
      }
      res.value[i] = v;
    }
  }
  res.joint = JointFromRoots(tree, res.value);
  return res;
}

std::vector<Policy> KLevelHierarchy(const GameTree& tree, int levels,
                                    const SolveOptions& opts) {
  OBL_CHECK(levels >= 0, UsageError, "negative level count");
  std::vector<Policy> out;
  Policy base = UniformPolicy(tree);
  base.name = "level0";
  out.push_back(std::move(base));
  for (int k = 1; k <= levels; ++k) {
    Policy merged;
    merged.name = "level" + std::to_string(k);
    merged.env_hash = out.back().env_hash;
    for (int p = 0; p < tree.env().NumPlayers(); ++p) {
      BestResponseResult br = BestResponse(tree, out.back(), p, opts);
      for (const auto& [key, dist] : br.policy.table()) merged.Set(key, dist);
    }
    out.push_back(std::move(merged));
  }
  return out;
}

Policy UniformPolicy(const GameTree& tree) {
  Policy out;
  out.name = "uniform";
  for (const auto& g : tree.groups()) {
    if (!g.acting) continue;
    ActionDist dist;
    double p = 1.0 / static_cast<double>(g.legal.size());
    for (int a : g.legal) dist.emplace_back(a, p);
    out.Set(g.key, std::move(dist));
  }
  return out;
}

}  // namespace obl
