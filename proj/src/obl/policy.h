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

#ifndef OBL_POLICY_H_
#define OBL_POLICY_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace obl {

// Sparse action distribution: (action id, probability), ascending by action.
using ActionDist = std::vector<std::pair<int, double>>;

// A tabular policy addressed by canonical history keys. Keys the table has
// never seen fall back to uniform over the legal actions the caller supplies;
// the fallback counter makes silent coverage gaps visible in reports.
class Policy {
 public:
  std::string name;
  std::string env_hash;

  bool Has(const std::string& key) const { return table_.count(key) > 0; }
  void Set(const std::string& key, ActionDist dist);
  const ActionDist* Find(const std::string& key) const;

  // Probabilities aligned with `legal`. Entries must cover exactly the legal
  // set when present (extra or missing actions throw ArtifactMismatchError).
  std::vector<double> ProbsAt(const std::string& key, const std::vector<int>& legal) const;
  double ProbOf(const std::string& key, int action, const std::vector<int>& legal) const;

  size_t Size() const { return table_.size(); }
  uint64_t fallback_hits() const { return fallback_hits_; }
  void ResetFallbackCounter() { fallback_hits_ = 0; }
  const std::map<std::string, ActionDist>& table() const { return table_; }

 private:
  std::map<std::string, ActionDist> table_;
  mutable uint64_t fallback_hits_ = 0;
};

// Tabular action values with per-pair visit counts.
class QTable {
 public:
  struct Entry {
    std::map<int, double> q;
    std::map<int, uint64_t> visits;
  };

  std::string name;
  std::string env_hash;

  Entry& At(const std::string& key) { return table_[key]; }
  const Entry* Find(const std::string& key) const;
  double Value(const std::string& key, int action, double fallback) const;
  uint64_t Visits(const std::string& key) const;

  size_t Size() const { return table_.size(); }
  const std::map<std::string, Entry>& table() const { return table_; }
  std::map<std::string, Entry>& mutable_table() { return table_; }

 private:
  std::map<std::string, Entry> table_;
};

// Deterministic greedy extraction; ties go to the lowest action id. Entries
// with fewer than `min_visits` total visits are dropped.
Policy GreedyFromQ(const QTable& q, uint64_t min_visits = 0);

// --- Artifact io -----------------------------------------------------------
// Both formats are versioned json with sorted keys, so identical contents
// serialize to identical bytes.

void SavePolicy(const Policy& policy, const std::string& path);
// `expect_env_hash` empty skips the binding check.
Policy LoadPolicy(const std::string& path, const std::string& expect_env_hash = "");

void SaveQTable(const QTable& q, const std::string& path);
QTable LoadQTable(const std::string& path, const std::string& expect_env_hash = "");

// --- Comparison --------------------------------------------------------------

// Total variation distance between two sparse distributions.
double TvDistance(const ActionDist& a, const ActionDist& b);

struct PolicyDiffReport {
  size_t shared = 0;
  size_t only_a = 0;
  size_t only_b = 0;
  double max_tv = 0.0;
  double mean_tv = 0.0;
  // Worst shared keys, largest distance first.
  std::vector<std::pair<std::string, double>> worst;
};

PolicyDiffReport DiffPolicies(const Policy& a, const Policy& b, size_t worst_k = 10);

}  // namespace obl

#endif  // OBL_POLICY_H_
