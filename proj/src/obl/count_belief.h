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

#ifndef OBL_COUNT_BELIEF_H_
#define OBL_COUNT_BELIEF_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "obl/env.h"
#include "obl/policy.h"
#include "obl/rng.h"

namespace obl {

// Empirical belief over the hidden part of the state, one histogram per
// history key. Each record also pins the first state observed at that key as
// an anchor: any state consistent with the history carries the same public
// information, so the anchor is enough to enumerate candidate completions
// and to rebuild full states later, including from a serialized model.
struct AohCounts {
  std::string anchor;                    // encoded state, first one seen
  std::map<std::string, double> counts;  // hidden completion -> visits
  double total = 0.0;
};

class CountBeliefModel {
 public:
  CountBeliefModel() = default;
  CountBeliefModel(std::string env_hash, std::string base_policy, double alpha)
      : env_hash_(std::move(env_hash)),
        base_policy_(std::move(base_policy)),
        alpha_(alpha) {}

  void Observe(const std::string& aoh_key, const std::string& completion,
               const std::string& anchor_encode);

  // Posterior over completions at the key. When the env can enumerate every
  // completion consistent with the history, the smoothing weight alpha is
  // spread over all of them; otherwise only observed completions carry mass.
  // Throws NoSupportError when nothing supports the key.
  std::vector<std::pair<std::string, double>> Distribution(
      const DecPomdp& env, const std::string& aoh_key) const;
  // Same, but against a caller-supplied state consistent with the key (e.g.
  // the live state mid-episode). Works at keys the fit never visited as long
  // as alpha > 0 and the env enumerates completions.
  std::vector<std::pair<std::string, double>> DistributionFrom(
      const DecPomdp& env, const GameState& anchor, int player,
      const std::string& aoh_key) const;

  // Draws a completion and rebuilds a full state from it.
  StatePtr SampleState(const DecPomdp& env, const std::string& aoh_key,
                       Rng& rng) const;
  StatePtr SampleStateFrom(const DecPomdp& env, const GameState& anchor,
                           int player, const std::string& aoh_key,
                           Rng& rng) const;

  bool Knows(const std::string& aoh_key) const { return table_.count(aoh_key) > 0; }
  size_t NumAohs() const { return table_.size(); }
  const std::map<std::string, AohCounts>& table() const { return table_; }

  const std::string& env_hash() const { return env_hash_; }
  const std::string& base_policy() const { return base_policy_; }
  double alpha() const { return alpha_; }
  uint64_t episodes() const { return episodes_; }
  void add_episodes(uint64_t n) { episodes_ += n; }
  // Used when deserializing; replaces any existing record wholesale.
  void RestoreRecord(const std::string& aoh_key, AohCounts rec) {
    table_[aoh_key] = std::move(rec);
  }

 private:
  std::string env_hash_;
  std::string base_policy_;  // name of the policy the rollouts followed
  double alpha_ = 1.0;
  uint64_t episodes_ = 0;
  std::map<std::string, AohCounts> table_;
};

// Rolls out `episodes` games under pi0 and counts the hidden completion at
// every acting history the actor reaches.
CountBeliefModel FitCountBelief(const DecPomdp& env, const Policy& pi0,
                                uint64_t episodes, double alpha, uint64_t seed);

void SaveCountBelief(const CountBeliefModel& model, const std::string& path);
CountBeliefModel LoadCountBelief(const std::string& path,
                                 const std::string& expect_env_hash = "");

// The belief at one key rendered as json, for command line inspection.
std::string DumpCountBeliefJson(const CountBeliefModel& model,
                                const DecPomdp& env,
                                const std::string& aoh_key);

}  // namespace obl

#endif  // OBL_COUNT_BELIEF_H_
