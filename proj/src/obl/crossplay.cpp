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

#include "obl/crossplay.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "json.hpp"
#include "obl/err.h"
#include "obl/rollout.h"
#include "obl/solver.h"
#include "obl/util.h"

namespace obl {

namespace {

void CheckShape(const std::vector<const Policy*>& policies,
                const std::vector<std::string>& labels) {
  OBL_CHECK(!policies.empty(), UsageError, "cross-play needs at least one policy");
  OBL_CHECK(policies.size() == labels.size(), UsageError,
            "cross-play labels must match the policy list");
  for (const Policy* p : policies) {
    OBL_CHECK(p != nullptr, UsageError, "null policy in cross-play set");
  }
}

}  // namespace

CrossPlayMatrix ExactCrossPlay(const GameTree& tree,
                               const std::vector<const Policy*>& policies,
                               const std::vector<std::string>& labels) {
  CheckShape(policies, labels);
  OBL_CHECK(tree.env().NumPlayers() == 2, UsageError,
            "cross-play is defined for two-seat games");
  const size_t n = policies.size();
  CrossPlayMatrix m;
  m.labels = labels;
  m.mode = "exact";
  m.mean.assign(n, std::vector<double>(n, 0.0));
  m.se.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      m.mean[i][j] = JointValue(tree, {policies[i], policies[j]}).joint;
    }
  }
  return m;
}

CrossPlayMatrix SampledCrossPlay(const DecPomdp& env,
                                 const std::vector<const Policy*>& policies,
                                 const std::vector<std::string>& labels,
                                 uint64_t episodes, uint64_t seed) {
  CheckShape(policies, labels);
  OBL_CHECK(env.NumPlayers() == 2, UsageError,
            "cross-play is defined for two-seat games");
  OBL_CHECK(episodes > 0, UsageError, "sampled cross-play needs episodes > 0");
  const size_t n = policies.size();
  CrossPlayMatrix m;
  m.labels = labels;
  m.mode = "sampled";
  m.episodes = episodes;
  m.mean.assign(n, std::vector<double>(n, 0.0));
  m.se.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      Rng rng(ChildSeed(seed, "crossplay", i * n + j));
      double sum = 0.0, sq = 0.0;
      for (uint64_t e = 0; e < episodes; ++e) {
        double r = RolloutReturn(env, {policies[i], policies[j]}, rng);
        sum += r;
        sq += r * r;
      }
      double mean = sum / static_cast<double>(episodes);
      m.mean[i][j] = mean;
      if (episodes > 1) {
        double var = (sq - sum * mean) / static_cast<double>(episodes - 1);
        m.se[i][j] = std::sqrt(std::max(var, 0.0) / static_cast<double>(episodes));
      }
    }
  }
  return m;
}

std::string CrossPlayCsv(const CrossPlayMatrix& m) {
  std::string out = "seat0\\seat1";
  for (const auto& l : m.labels) out += "," + l;
  out += "\n";
  for (size_t i = 0; i < m.labels.size(); ++i) {
    out += m.labels[i];
    for (size_t j = 0; j < m.labels.size(); ++j) {
      out += "," + DoubleToString(m.mean[i][j]);
    }
    out += "\n";
  }
  return out;
}

std::string CrossPlayJson(const CrossPlayMatrix& m) {
  nlohmann::json doc;
  doc["format"] = "obl.crossplay/1";
  doc["mode"] = m.mode;
  doc["episodes"] = m.episodes;
  doc["labels"] = m.labels;
  doc["mean"] = m.mean;
  doc["se"] = m.se;
  return doc.dump(1) + "\n";
}

}  // namespace obl
