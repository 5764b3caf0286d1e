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

#ifndef OBL_CROSSPLAY_H_
#define OBL_CROSSPLAY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "obl/env.h"
#include "obl/policy.h"
#include "obl/tree.h"

namespace obl {

// Pairwise evaluation of a set of two-seat policies: cell (i, j) is the
// expected episode return with policy i in seat 0 and policy j in seat 1.
struct CrossPlayMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> se;  // per-cell standard error; 0 when exact
  std::string mode;                     // "exact" or "sampled"
  uint64_t episodes = 0;                // per cell, sampled mode only
};

CrossPlayMatrix ExactCrossPlay(const GameTree& tree,
                               const std::vector<const Policy*>& policies,
                               const std::vector<std::string>& labels);

// Monte Carlo estimate; each cell rolls out on an independent child stream of
// `seed`, so growing the policy set never perturbs existing cells.
CrossPlayMatrix SampledCrossPlay(const DecPomdp& env,
                                 const std::vector<const Policy*>& policies,
                                 const std::vector<std::string>& labels,
                                 uint64_t episodes, uint64_t seed);

std::string CrossPlayCsv(const CrossPlayMatrix& m);
std::string CrossPlayJson(const CrossPlayMatrix& m);

}  // namespace obl

#endif  // OBL_CROSSPLAY_H_
