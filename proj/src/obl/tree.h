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

#ifndef OBL_TREE_H_
#define OBL_TREE_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "obl/env.h"
#include "obl/policy.h"

namespace obl {

// One enumerated history. Children are indexed in step with `legal`;
// children[k] lists the chance branches of taking legal[k].
struct TreeNode {
  StatePtr state;
  int parent = -1;
  int incoming_action = -1;
  double chance_in = 1.0;     // chance probability of the edge into this node
  double chance_reach = 1.0;  // product of chance_in along the path
  double reward_in = 0.0;     // team reward emitted on the edge into this node
  int depth = 0;
  bool terminal = false;
  int player = -1;  // acting player; -1 at terminal nodes
  std::vector<int> legal;
  std::vector<std::vector<std::pair<int, double>>> children;
  std::vector<int> aoh;  // one history id per player
};

// All histories sharing one player's action-observation key. Keys encode one
// observation per visited node, so every member sits at the same depth.
struct AohGroup {
  std::string key;
  int player = -1;
  int depth = 0;
  bool acting = false;  // whether `player` is the one to move at these nodes
  bool terminal = false;
  std::vector<int> nodes;
  std::vector<int> legal;  // shared legal set when acting
};

struct EnumerateOptions {
  uint64_t max_aohs = 5'000'000;
  uint64_t max_nodes = 20'000'000;
};

// The fully enumerated game: every reachable history of a bounded-length env,
// with per-player histories grouped for policy and belief queries. Node
// indices are depth-first, so a parent always precedes its children.
class GameTree {
 public:
  static GameTree Enumerate(const DecPomdp& env, const EnumerateOptions& opts = {});

  const DecPomdp& env() const { return *env_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int id) const { return nodes_[id]; }
  const std::vector<int>& roots() const { return roots_; }

  const std::vector<AohGroup>& groups() const { return groups_; }
  const AohGroup& group(int id) const { return groups_[id]; }
  // -1 when the key was never enumerated.
  int GroupOfKey(const std::string& key) const;

  int max_depth() const { return max_depth_; }
  // Node ids at each depth, ascending depth; inner vectors ascending by id.
  const std::vector<std::vector<int>>& nodes_by_depth() const { return nodes_by_depth_; }
  // Group ids at each depth (acting and observing alike).
  const std::vector<std::vector<int>>& groups_by_depth() const { return groups_by_depth_; }

 private:
  GameTree() = default;

  int AddNode(const DecPomdp& env, StatePtr state, int parent, int action,
              double chance_in, double reward_in, const EnumerateOptions& opts);
  int InternAoh(int player, std::string key, int node_id,
                const EnumerateOptions& opts);

  const DecPomdp* env_ = nullptr;
  std::vector<TreeNode> nodes_;
  std::vector<int> roots_;
  std::vector<AohGroup> groups_;
  std::unordered_map<std::string, int> group_index_;
  std::vector<std::vector<int>> nodes_by_depth_;
  std::vector<std::vector<int>> groups_by_depth_;
  int max_depth_ = 0;
};

// Reach weight of a node under a base policy, kept in a form that still
// orders histories when some policy factors are exactly zero: `zeros` counts
// the zero factors and `weight` replaces each of them with a uniform tremble
// 1/|legal|. Strict reach is weight when zeros == 0, otherwise 0.
struct TrembleReach {
  int zeros = 0;
  double weight = 0.0;
};

// `skip_player` >= 0 drops that player's own decision factors (they are
// pinned by the player's history, so they cancel when conditioning on it).
std::vector<TrembleReach> ReachUnder(const GameTree& tree, const Policy& pi0,
                                     int skip_player = -1);

// Machine-readable dump of the enumerated game (nodes, edges, history
// groups), for inspection tooling.
std::string DumpDagJson(const GameTree& tree);

}  // namespace obl

#endif  // OBL_TREE_H_
