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

#include "obl/belief.h"

#include <algorithm>
#include <limits>

#include "json.hpp"
#include "obl/err.h"

namespace obl {

int BeliefDistribution::Sample(Rng& rng) const {
  OBL_CHECK(!support.empty(), NoSupportError, "sampling an empty belief");
  double x = rng.Uniform();
  for (const auto& [node, p] : support) {
    x -= p;
    if (x <= 0.0) return node;
  }
  return support.back().first;
}

namespace {

BeliefDistribution Normalized(int group_id, std::vector<std::pair<int, double>> raw) {
  double total = 0.0;
  for (const auto& [node, w] : raw) total += w;
  OBL_CHECK(total > 0.0, NoSupportError, "belief support has zero mass");
  for (auto& [node, w] : raw) w /= total;
  BeliefDistribution out;
  out.group = group_id;
  out.support = std::move(raw);
  return out;
}

}  // namespace

BeliefDistribution ExactBelief(const GameTree& tree,
                               const std::vector<TrembleReach>& reach, int group_id) {
  const AohGroup& g = tree.group(group_id);
  std::vector<std::pair<int, double>> raw;
  for (int n : g.nodes) {
    if (reach[n].zeros == 0 && reach[n].weight > 0.0) {
      raw.emplace_back(n, reach[n].weight);
    }
  }
  OBL_CHECK(!raw.empty(), UnreachableHistoryError,
            "base policy never reaches " + g.key);
  return Normalized(group_id, std::move(raw));
}

BeliefDistribution TrembleBelief(const GameTree& tree,
                                 const std::vector<TrembleReach>& reach, int group_id) {
  const AohGroup& g = tree.group(group_id);
  int min_zeros = std::numeric_limits<int>::max();
  for (int n : g.nodes) min_zeros = std::min(min_zeros, reach[n].zeros);
  std::vector<std::pair<int, double>> raw;
  for (int n : g.nodes) {
    if (reach[n].zeros == min_zeros) raw.emplace_back(n, reach[n].weight);
  }
  return Normalized(group_id, std::move(raw));
}

BeliefDistribution GroundedBelief(const GameTree& tree, int group_id) {
  const AohGroup& g = tree.group(group_id);
  std::vector<std::pair<int, double>> raw;
  for (int n : g.nodes) raw.emplace_back(n, tree.node(n).chance_reach);
  return Normalized(group_id, std::move(raw));
}

std::string DumpBeliefsJson(const GameTree& tree, const Policy& pi0,
                            const std::string& kind) {
  OBL_CHECK(kind == "exact" || kind == "tremble" || kind == "grounded", UsageError,
            "belief kind must be exact, tremble or grounded");
  std::vector<TrembleReach> reach;
  if (kind != "grounded") reach = ReachUnder(tree, pi0);

  nlohmann::json doc;
  doc["format"] = "obl.belief/1";
  doc["env"] = tree.env().Name();
  doc["kind"] = kind;
  doc["policy"] = pi0.name;
  nlohmann::json entries = nlohmann::json::object();
  size_t unreachable = 0;
  for (size_t gid = 0; gid < tree.groups().size(); ++gid) {
    const AohGroup& g = tree.group(static_cast<int>(gid));
    if (!g.acting) continue;
    BeliefDistribution belief;
    if (kind == "grounded") {
      belief = GroundedBelief(tree, static_cast<int>(gid));
    } else if (kind == "tremble") {
      belief = TrembleBelief(tree, reach, static_cast<int>(gid));
    } else {
      try {
        belief = ExactBelief(tree, reach, static_cast<int>(gid));
      } catch (const UnreachableHistoryError&) {
        ++unreachable;
        continue;
      }
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [node, p] : belief.support) {
      arr.push_back(nlohmann::json::array(
          {node, tree.node(node).state->Encode(), p}));
    }
    entries[g.key] = std::move(arr);
  }
  doc["entries"] = std::move(entries);
  doc["skipped_unreachable"] = unreachable;
  return doc.dump(1) + "\n";
}

}  // namespace obl
