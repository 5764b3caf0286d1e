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

#ifndef OBL_REPLAY_H_
#define OBL_REPLAY_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "obl/err.h"
#include "obl/rng.h"

namespace obl {

// One decision from a recorded episode, with its training target already
// computed at collection time (fictitious rollouts happen once, not per
// replay of the entry).
struct ReplayStep {
  std::string key;  // actor's history key at the decision
  int action = -1;
  double target = 0.0;
};

// An episode's worth of decisions plus the id of the value snapshot the
// targets were bootstrapped from, so staleness stays measurable.
struct ReplayEntry {
  std::vector<ReplayStep> steps;
  uint64_t generation = 0;
};

// Fixed-capacity ring; old entries are overwritten in arrival order. Sampling
// is uniform with replacement.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity) : capacity_(capacity) {
    OBL_CHECK(capacity_ > 0, UsageError, "replay capacity must be positive");
    ring_.reserve(capacity_);
  }

  void Push(ReplayEntry entry) {
    if (ring_.size() < capacity_) {
      ring_.push_back(std::move(entry));
    } else {
      ring_[pushed_ % capacity_] = std::move(entry);
    }
    ++pushed_;
  }

  const ReplayEntry& Sample(Rng& rng) {
    OBL_CHECK(!ring_.empty(), UsageError, "sampling an empty replay buffer");
    ++sampled_;
    return ring_[rng.UniformInt(static_cast<int>(ring_.size()))];
  }

  size_t size() const { return ring_.size(); }
  uint64_t pushed() const { return pushed_; }
  uint64_t sampled() const { return sampled_; }
  // Mean times an entry gets consumed; batch b with one push per step sits
  // near b.
  double MeanReuse() const {
    return pushed_ == 0 ? 0.0
                        : static_cast<double>(sampled_) / static_cast<double>(pushed_);
  }

 private:
  std::vector<ReplayEntry> ring_;
  size_t capacity_;
  uint64_t pushed_ = 0;
  uint64_t sampled_ = 0;
};

}  // namespace obl

#endif  // OBL_REPLAY_H_
