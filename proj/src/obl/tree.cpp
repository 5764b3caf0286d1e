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

#include "obl/tree.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "obl/util.h"

namespace obl {

int GameTree::InternAoh(int player, std::string key, int node_id,
                        const EnumerateOptions& opts) {
  auto [it, inserted] = group_index_.try_emplace(std::move(key),
                                                 static_cast<int>(groups_.size()));
  if (inserted) {
    OBL_CHECK(groups_.size() < opts.max_aohs, BudgetExceededError,
              "history-group count exceeds max_aohs");
    AohGroup g;
    g.key = it->first;
    g.player = player;
    groups_.push_back(std::move(g));
  }
  groups_[it->second].nodes.push_back(node_id);
  return it->second;
}

int GameTree::AddNode(const DecPomdp& env, StatePtr state, int parent, int action,
                      double chance_in, double reward_in,
                      const EnumerateOptions& opts) {
  OBL_CHECK(nodes_.size() < opts.max_nodes, BudgetExceededError,
            "history count exceeds max_nodes");
  int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  {
    TreeNode& n = nodes_.back();
    n.state = std::move(state);
    n.parent = parent;
    n.incoming_action = action;
    n.chance_in = chance_in;
    n.reward_in = reward_in;
    if (parent >= 0) {
      n.depth = nodes_[parent].depth + 1;
      n.chance_reach = nodes_[parent].chance_reach * chance_in;
    } else {
      n.chance_reach = chance_in;
    }
    n.terminal = env.IsTerminal(*n.state);
    if (!n.terminal) {
      n.player = env.ActingPlayer(*n.state);
      n.legal = env.LegalActions(*n.state);
      OBL_CHECK(!n.legal.empty(), UsageError,
                "non-terminal state with no legal action: " + n.state->Encode());
    }
  }

  int num_players = env.NumPlayers();
  for (int p = 0; p < num_players; ++p) {
    std::string key;
    if (parent < 0) {
      key = "p" + std::to_string(p);
    } else {
      const TreeNode& par = nodes_[parent];
      key = groups_[par.aoh[p]].key;
      key += ";a=";
      bool visible = par.player == p || env.ActionVisibleTo(*par.state, par.player, p);
      key += visible ? std::to_string(action) : "h";
    }
    key += ";o=" + EscapeToken(env.Observation(*nodes_[id].state, p));
    nodes_[id].aoh.push_back(InternAoh(p, std::move(key), id, opts));
  }

  // Group invariants: a player always knows their own depth, whether the game
  // ended, whether it is their move, and what they may do.
  for (int p = 0; p < num_players; ++p) {
    AohGroup& g = groups_[nodes_[id].aoh[p]];
    const TreeNode& n = nodes_[id];
    if (g.nodes.size() == 1) {
      g.depth = n.depth;
      g.terminal = n.terminal;
      g.acting = !n.terminal && n.player == p;
      if (g.acting) g.legal = n.legal;
    } else {
      OBL_CHECK(g.depth == n.depth, UsageError,
                "one history key spans two depths: " + g.key);
      OBL_CHECK(g.terminal == n.terminal, UsageError,
                "observations do not reveal the end of the game: " + g.key);
      bool acting = !n.terminal && n.player == p;
      OBL_CHECK(g.acting == acting, UsageError,
                "observations do not reveal whose turn it is: " + g.key);
      if (g.acting) {
        OBL_CHECK(g.legal == n.legal, UsageError,
                  "legal actions are not a function of the actor's history: " + g.key);
      }
    }
  }

  if (nodes_[id].terminal) return id;

  const std::vector<int> legal = nodes_[id].legal;
  nodes_[id].children.resize(legal.size());
  for (size_t k = 0; k < legal.size(); ++k) {
    int a = legal[k];
    double r = env.Reward(*nodes_[id].state, a);
    auto support = env.NextStates(*nodes_[id].state, a);
    OBL_CHECK(!support.empty(), UsageError, "action with empty successor support");
    double mass = 0.0;
    for (auto& ws : support) {
      OBL_CHECK(ws.prob > 0.0, UsageError, "successor with non-positive probability");
      mass += ws.prob;
      int child = AddNode(env, std::move(ws.state), id, a, ws.prob, r, opts);
      nodes_[id].children[k].emplace_back(child, ws.prob);
    }
    OBL_CHECK(std::abs(mass - 1.0) <= 1e-9, UsageError,
              "successor probabilities sum to " + DoubleToString(mass));
  }
  return id;
}

GameTree GameTree::Enumerate(const DecPomdp& env, const EnumerateOptions& opts) {
  GameTree t;
  t.env_ = &env;
  auto initial = env.InitialStates();
  OBL_CHECK(!initial.empty(), UsageError, "env has no initial states");
  double mass = 0.0;
  for (auto& ws : initial) {
    OBL_CHECK(ws.prob > 0.0, UsageError, "initial state with non-positive probability");
    mass += ws.prob;
    t.roots_.push_back(t.AddNode(env, std::move(ws.state), -1, -1, ws.prob, 0.0, opts));
  }
  OBL_CHECK(std::abs(mass - 1.0) <= 1e-9, UsageError,
            "initial probabilities sum to " + DoubleToString(mass));

  for (const auto& n : t.nodes_) t.max_depth_ = std::max(t.max_depth_, n.depth);
  t.nodes_by_depth_.assign(t.max_depth_ + 1, {});
  t.groups_by_depth_.assign(t.max_depth_ + 1, {});
  for (size_t i = 0; i < t.nodes_.size(); ++i) {
    t.nodes_by_depth_[t.nodes_[i].depth].push_back(static_cast<int>(i));
  }
  for (size_t g = 0; g < t.groups_.size(); ++g) {
    t.groups_by_depth_[t.groups_[g].depth].push_back(static_cast<int>(g));
  }
  return t;
}

int GameTree::GroupOfKey(const std::string& key) const {
  auto it = group_index_.find(key);
  return it == group_index_.end() ? -1 : it->second;
}

std::vector<TrembleReach> ReachUnder(const GameTree& tree, const Policy& pi0,
                                     int skip_player) {
  const auto& nodes = tree.nodes();
  std::vector<TrembleReach> reach(nodes.size());
  // Per-group action probabilities, computed once.
  std::vector<std::vector<double>> probs(tree.groups().size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    const TreeNode& n = nodes[i];
    if (n.parent < 0) {
      reach[i] = TrembleReach{0, n.chance_in};
    } else {
      const TreeNode& par = nodes[n.parent];
      if (par.player == skip_player) {
        reach[i] = reach[n.parent];
        reach[i].weight *= n.chance_in;
        continue;
      }
      int gid = par.aoh[par.player];
      if (probs[gid].empty()) {
        probs[gid] = pi0.ProbsAt(tree.group(gid).key, par.legal);
      }
      size_t k = 0;
      while (par.legal[k] != n.incoming_action) ++k;
      double p = probs[gid][k];
      reach[i] = reach[n.parent];
      if (p > 0.0) {
        reach[i].weight *= p * n.chance_in;
      } else {
        ++reach[i].zeros;
        reach[i].weight *= n.chance_in / static_cast<double>(par.legal.size());
      }
    }
  }
  return reach;
}

std::string DumpDagJson(const GameTree& tree) {
  nlohmann::json doc;
  doc["format"] = "obl.dag/1";
  doc["env"] = tree.env().Name();
  nlohmann::json nodes = nlohmann::json::array();
  for (size_t i = 0; i < tree.nodes().size(); ++i) {
    const TreeNode& n = tree.node(static_cast<int>(i));
    nlohmann::json jn;
    jn["id"] = i;
    jn["state"] = n.state->Encode();
    jn["parent"] = n.parent;
    jn["action_in"] = n.incoming_action;
    jn["chance_in"] = n.chance_in;
    jn["reward_in"] = n.reward_in;
    jn["depth"] = n.depth;
    jn["terminal"] = n.terminal;
    jn["player"] = n.player;
    jn["aoh"] = n.aoh;
    if (!n.terminal) {
      nlohmann::json edges = nlohmann::json::array();
      for (size_t k = 0; k < n.legal.size(); ++k) {
        for (const auto& [child, p] : n.children[k]) {
          edges.push_back(nlohmann::json::array({n.legal[k], child, p}));
        }
      }
      jn["edges"] = std::move(edges);
    }
    nodes.push_back(std::move(jn));
  }
  doc["nodes"] = std::move(nodes);
  nlohmann::json groups = nlohmann::json::array();
  for (size_t g = 0; g < tree.groups().size(); ++g) {
    const AohGroup& grp = tree.group(static_cast<int>(g));
    nlohmann::json jg;
    jg["id"] = g;
    jg["key"] = grp.key;
    jg["player"] = grp.player;
    jg["depth"] = grp.depth;
    jg["acting"] = grp.acting;
    jg["terminal"] = grp.terminal;
    jg["nodes"] = grp.nodes;
    if (grp.acting) jg["legal"] = grp.legal;
    groups.push_back(std::move(jg));
  }
  doc["groups"] = std::move(groups);
  return doc.dump(1) + "\n";
}

}  // namespace obl
