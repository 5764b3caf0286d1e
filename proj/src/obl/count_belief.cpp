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

#include "obl/count_belief.h"

#include <utility>

#include "json.hpp"
#include "obl/aoh.h"
#include "obl/artifact.h"
#include "obl/err.h"
#include "obl/util.h"

namespace obl {

namespace {
constexpr char kCountsFormat[] = "obl.counts/1";
}  // namespace

void CountBeliefModel::Observe(const std::string& aoh_key,
                               const std::string& completion,
                               const std::string& anchor_encode) {
  AohCounts& rec = table_[aoh_key];
  if (rec.anchor.empty()) rec.anchor = anchor_encode;
  rec.counts[completion] += 1.0;
  rec.total += 1.0;
}

std::vector<std::pair<std::string, double>> CountBeliefModel::DistributionFrom(
    const DecPomdp& env, const GameState& anchor, int player,
    const std::string& aoh_key) const {
  const AohCounts* rec = nullptr;
  auto it = table_.find(aoh_key);
  if (it != table_.end()) rec = &it->second;

  std::vector<std::string> support;
  bool enumerated =
      alpha_ > 0.0 && env.EnumerateCompletions(anchor, player, &support);
  if (!enumerated) {
    support.clear();
    if (rec != nullptr) {
      for (const auto& [c, n] : rec->counts) support.push_back(c);
    }
  }
  OBL_CHECK(!support.empty(), NoSupportError,
            "no completion support at " + aoh_key);

  std::vector<std::pair<std::string, double>> out;
  out.reserve(support.size());
  double total = 0.0;
  double matched = 0.0;
  for (const auto& c : support) {
    double w = alpha_;
    if (rec != nullptr) {
      auto cit = rec->counts.find(c);
      if (cit != rec->counts.end()) {
        w += cit->second;
        matched += cit->second;
      }
    }
    total += w;
    out.emplace_back(c, w);
  }
  if (enumerated && rec != nullptr) {
    // Every observed completion must be one the env enumerates; losing mass
    // here means the anchor and the counts disagree about the history.
    OBL_CHECK(matched == rec->total, InconsistentHistoryError,
              "observed completions escape the enumerated support at " + aoh_key);
  }
  OBL_CHECK(total > 0.0, NoSupportError, "zero belief mass at " + aoh_key);
  for (auto& [c, w] : out) w /= total;
  return out;
}

std::vector<std::pair<std::string, double>> CountBeliefModel::Distribution(
    const DecPomdp& env, const std::string& aoh_key) const {
  auto it = table_.find(aoh_key);
  OBL_CHECK(it != table_.end(), NoSupportError,
            "no observations at " + aoh_key);
  StatePtr anchor = env.DecodeState(it->second.anchor);
  return DistributionFrom(env, *anchor, PlayerOfAohKey(aoh_key), aoh_key);
}

StatePtr CountBeliefModel::SampleStateFrom(const DecPomdp& env,
                                           const GameState& anchor, int player,
                                           const std::string& aoh_key,
                                           Rng& rng) const {
  auto dist = DistributionFrom(env, anchor, player, aoh_key);
  std::vector<double> weights;
  weights.reserve(dist.size());
  for (const auto& [c, p] : dist) weights.push_back(p);
  const std::string& completion = dist[rng.SampleIndex(weights)].first;
  return env.StateForCompletion(anchor, player, completion, rng);
}

StatePtr CountBeliefModel::SampleState(const DecPomdp& env,
                                       const std::string& aoh_key,
                                       Rng& rng) const {
  auto it = table_.find(aoh_key);
  OBL_CHECK(it != table_.end(), NoSupportError,
            "no observations at " + aoh_key);
  StatePtr anchor = env.DecodeState(it->second.anchor);
  return SampleStateFrom(env, *anchor, PlayerOfAohKey(aoh_key), aoh_key, rng);
}

CountBeliefModel FitCountBelief(const DecPomdp& env, const Policy& pi0,
                                uint64_t episodes, double alpha,
                                uint64_t seed) {
  CountBeliefModel model(pi0.env_hash, pi0.name, alpha);
  Rng rng(seed);
  for (uint64_t ep = 0; ep < episodes; ++ep) {
    StatePtr s = SampleInitial(env, rng);
    std::vector<Aoh> aohs;
    aohs.reserve(env.NumPlayers());
    for (int p = 0; p < env.NumPlayers(); ++p) {
      aohs.emplace_back(p);
      aohs[p].AddObservation(env.Observation(*s, p));
    }
    while (!env.IsTerminal(*s)) {
      int actor = env.ActingPlayer(*s);
      model.Observe(aohs[actor].Key(), env.HiddenCompletion(*s, actor),
                    s->Encode());
      auto legal = env.LegalActions(*s);
      auto probs = pi0.ProbsAt(aohs[actor].Key(), legal);
      int a = legal[rng.SampleIndex(probs)];
      StatePtr next = SampleNext(env, *s, a, rng);
      for (int p = 0; p < env.NumPlayers(); ++p) {
        aohs[p].AddAction(a, env.ActionVisibleTo(*s, actor, p));
        aohs[p].AddObservation(env.Observation(*next, p));
      }
      s = std::move(next);
    }
  }
  model.add_episodes(episodes);
  return model;
}

void SaveCountBelief(const CountBeliefModel& model, const std::string& path) {
  nlohmann::json doc;
  doc["format"] = kCountsFormat;
  doc["env"] = model.env_hash();
  doc["base_policy"] = model.base_policy();
  doc["alpha"] = model.alpha();
  doc["episodes"] = model.episodes();
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [key, rec] : model.table()) {
    nlohmann::json e;
    e["anchor"] = rec.anchor;
    e["counts"] = nlohmann::json(rec.counts);
    entries[key] = std::move(e);
  }
  doc["aohs"] = std::move(entries);
  WriteFileOrThrow(path, doc.dump(1) + "\n");
}

CountBeliefModel LoadCountBelief(const std::string& path,
                                 const std::string& expect_env_hash) {
  nlohmann::json doc = LoadArtifact(path, kCountsFormat);
  CheckEnvBinding(doc, path, expect_env_hash);
  CountBeliefModel model(doc.value("env", ""), doc.value("base_policy", ""),
                         doc.value("alpha", 1.0));
  model.add_episodes(doc.value("episodes", uint64_t{0}));
  for (const auto& [key, val] : doc.at("aohs").items()) {
    AohCounts rec;
    rec.anchor = val.value("anchor", "");
    for (const auto& [c, n] : val.at("counts").items()) {
      double count = n.get<double>();
      rec.counts[c] = count;
      rec.total += count;
    }
    model.RestoreRecord(key, std::move(rec));
  }
  return model;
}

std::string DumpCountBeliefJson(const CountBeliefModel& model,
                                const DecPomdp& env,
                                const std::string& aoh_key) {
  auto dist = model.Distribution(env, aoh_key);
  const AohCounts* rec = nullptr;
  auto it = model.table().find(aoh_key);
  if (it != model.table().end()) rec = &it->second;

  nlohmann::json doc;
  doc["aoh"] = aoh_key;
  doc["alpha"] = model.alpha();
  doc["episodes"] = model.episodes();
  nlohmann::json support = nlohmann::json::array();
  for (const auto& [c, p] : dist) {
    nlohmann::json row;
    row["completion"] = c;
    row["prob"] = p;
    double count = 0.0;
    if (rec != nullptr) {
      auto cit = rec->counts.find(c);
      if (cit != rec->counts.end()) count = cit->second;
    }
    row["count"] = count;
    support.push_back(std::move(row));
  }
  doc["support"] = std::move(support);
  return doc.dump(1) + "\n";
}

}  // namespace obl
