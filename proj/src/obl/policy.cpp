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

#include "obl/policy.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "obl/artifact.h"
#include "obl/err.h"
#include "obl/util.h"

namespace obl {

namespace {
constexpr char kPolicyFormat[] = "obl.policy/1";
constexpr char kQTableFormat[] = "obl.qtable/1";
constexpr double kDistMassTol = 1e-9;
}  // namespace

void Policy::Set(const std::string& key, ActionDist dist) {
  std::sort(dist.begin(), dist.end());
  double total = 0.0;
  for (size_t i = 0; i < dist.size(); ++i) {
    OBL_CHECK(dist[i].second >= 0.0, UsageError, "negative action probability");
    OBL_CHECK(i == 0 || dist[i].first != dist[i - 1].first, UsageError,
              "duplicate action in distribution at " + key);
    total += dist[i].second;
  }
  OBL_CHECK(std::abs(total - 1.0) <= kDistMassTol, UsageError,
            "action distribution mass " + DoubleToString(total) + " at " + key);
  table_[key] = std::move(dist);
}

const ActionDist* Policy::Find(const std::string& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

std::vector<double> Policy::ProbsAt(const std::string& key,
                                    const std::vector<int>& legal) const {
  OBL_CHECK(!legal.empty(), UsageError, "no legal actions at " + key);
  std::vector<double> out(legal.size(), 0.0);
  const ActionDist* dist = Find(key);
  if (dist == nullptr) {
    ++fallback_hits_;
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(legal.size()));
    return out;
  }
  OBL_CHECK(dist->size() == legal.size(), ArtifactMismatchError,
            "policy entry does not match the legal set at " + key);
  for (size_t i = 0; i < legal.size(); ++i) {
    auto it = std::find_if(dist->begin(), dist->end(),
                           [&](const auto& ap) { return ap.first == legal[i]; });
    OBL_CHECK(it != dist->end(), ArtifactMismatchError,
              "policy entry misses a legal action at " + key);
    out[i] = it->second;
  }
  return out;
}

double Policy::ProbOf(const std::string& key, int action,
                      const std::vector<int>& legal) const {
  auto probs = ProbsAt(key, legal);
  for (size_t i = 0; i < legal.size(); ++i) {
    if (legal[i] == action) return probs[i];
  }
  throw UsageError("action not legal at " + key);
}

const QTable::Entry* QTable::Find(const std::string& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

double QTable::Value(const std::string& key, int action, double fallback) const {
  const Entry* e = Find(key);
  if (e == nullptr) return fallback;
  auto it = e->q.find(action);
  return it == e->q.end() ? fallback : it->second;
}

uint64_t QTable::Visits(const std::string& key) const {
  const Entry* e = Find(key);
  if (e == nullptr) return 0;
  uint64_t total = 0;
  for (const auto& [a, n] : e->visits) total += n;
  return total;
}

Policy GreedyFromQ(const QTable& q, uint64_t min_visits) {
  Policy out;
  out.name = q.name + ":greedy";
  out.env_hash = q.env_hash;
  for (const auto& [key, entry] : q.table()) {
    if (entry.q.empty()) continue;
    uint64_t total = 0;
    for (const auto& [a, n] : entry.visits) total += n;
    if (total < min_visits) continue;
    int best = -1;
    double best_q = 0.0;
    for (const auto& [a, v] : entry.q) {
      if (best < 0 || v > best_q) {
        best = a;
        best_q = v;
      }
    }
    ActionDist dist;
    for (const auto& [a, v] : entry.q) dist.emplace_back(a, a == best ? 1.0 : 0.0);
    out.Set(key, std::move(dist));
  }
  return out;
}

namespace {

nlohmann::json DistToJson(const ActionDist& dist) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [a, p] : dist) arr.push_back(nlohmann::json::array({a, p}));
  return arr;
}

ActionDist DistFromJson(const nlohmann::json& arr) {
  ActionDist dist;
  for (const auto& e : arr) {
    OBL_CHECK(e.is_array() && e.size() == 2, ArtifactMismatchError,
              "malformed policy entry");
    dist.emplace_back(e[0].get<int>(), e[1].get<double>());
  }
  return dist;
}

}  // namespace

void SavePolicy(const Policy& policy, const std::string& path) {
  nlohmann::json doc;
  doc["format"] = kPolicyFormat;
  doc["env"] = policy.env_hash;
  doc["name"] = policy.name;
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [key, dist] : policy.table()) entries[key] = DistToJson(dist);
  doc["entries"] = std::move(entries);
  WriteFileOrThrow(path, doc.dump(1) + "\n");
}

Policy LoadPolicy(const std::string& path, const std::string& expect_env_hash) {
  nlohmann::json doc = LoadArtifact(path, kPolicyFormat);
  CheckEnvBinding(doc, path, expect_env_hash);
  Policy out;
  out.env_hash = doc.value("env", "");
  out.name = doc.value("name", "");
  for (const auto& [key, val] : doc.at("entries").items()) {
    out.Set(key, DistFromJson(val));
  }
  return out;
}

void SaveQTable(const QTable& q, const std::string& path) {
  nlohmann::json doc;
  doc["format"] = kQTableFormat;
  doc["env"] = q.env_hash;
  doc["name"] = q.name;
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [key, entry] : q.table()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [a, v] : entry.q) {
      uint64_t n = 0;
      auto it = entry.visits.find(a);
      if (it != entry.visits.end()) n = it->second;
      arr.push_back(nlohmann::json::array({a, v, n}));
    }
    entries[key] = std::move(arr);
  }
  doc["entries"] = std::move(entries);
  WriteFileOrThrow(path, doc.dump(1) + "\n");
}

QTable LoadQTable(const std::string& path, const std::string& expect_env_hash) {
  nlohmann::json doc = LoadArtifact(path, kQTableFormat);
  CheckEnvBinding(doc, path, expect_env_hash);
  QTable out;
  out.env_hash = doc.value("env", "");
  out.name = doc.value("name", "");
  for (const auto& [key, val] : doc.at("entries").items()) {
    auto& entry = out.At(key);
    for (const auto& e : val) {
      OBL_CHECK(e.is_array() && e.size() == 3, ArtifactMismatchError,
                "malformed value entry");
      int a = e[0].get<int>();
      entry.q[a] = e[1].get<double>();
      entry.visits[a] = e[2].get<uint64_t>();
    }
  }
  return out;
}

double TvDistance(const ActionDist& a, const ActionDist& b) {
  double sum = 0.0;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
      sum += std::abs(a[i].second);
      ++i;
    } else if (i >= a.size() || b[j].first < a[i].first) {
      sum += std::abs(b[j].second);
      ++j;
    } else {
      sum += std::abs(a[i].second - b[j].second);
      ++i;
      ++j;
    }
  }
  return 0.5 * sum;
}

PolicyDiffReport DiffPolicies(const Policy& a, const Policy& b, size_t worst_k) {
  PolicyDiffReport report;
  std::vector<std::pair<double, std::string>> scored;
  double tv_sum = 0.0;
  for (const auto& [key, dist_a] : a.table()) {
    const ActionDist* dist_b = b.Find(key);
    if (dist_b == nullptr) {
      ++report.only_a;
      continue;
    }
    ++report.shared;
    double tv = TvDistance(dist_a, *dist_b);
    tv_sum += tv;
    report.max_tv = std::max(report.max_tv, tv);
    scored.emplace_back(tv, key);
  }
  for (const auto& [key, dist_b] : b.table()) {
    if (!a.Has(key)) ++report.only_b;
  }
  if (report.shared > 0) tv_sum /= static_cast<double>(report.shared);
  report.mean_tv = tv_sum;
  std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  for (size_t i = 0; i < scored.size() && i < worst_k; ++i) {
    report.worst.emplace_back(scored[i].second, scored[i].first);
  }
  return report;
}

}  // namespace obl
