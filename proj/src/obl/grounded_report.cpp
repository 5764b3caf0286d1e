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

#include "obl/grounded_report.h"

#include <utility>
#include <vector>

#include "json.hpp"
#include "obl/aoh.h"
#include "obl/err.h"
#include "obl/mini_hanabi.h"
#include "obl/rng.h"

namespace obl {

GroundedPlayReport GroundedPlayEval(const DecPomdp& env, const Policy& policy,
                                    uint64_t episodes, uint64_t seed) {
  const auto* hanabi = dynamic_cast<const MiniHanabiEnv*>(&env);
  OBL_CHECK(hanabi != nullptr, UsageError,
            "grounded play classification needs the hanabi env");
  const int hand = hanabi->params().hand_size;

  GroundedPlayReport out;
  out.episodes = episodes;
  Rng rng(seed);
  for (uint64_t ep = 0; ep < episodes; ++ep) {
    StatePtr s = SampleInitial(env, rng);
    std::vector<Aoh> aohs;
    for (int p = 0; p < env.NumPlayers(); ++p) {
      aohs.emplace_back(p);
      aohs[p].AddObservation(env.Observation(*s, p));
    }
    while (!env.IsTerminal(*s)) {
      int actor = env.ActingPlayer(*s);
      std::vector<int> legal = env.LegalActions(*s);
      auto probs = policy.ProbsAt(aohs[actor].Key(), legal);
      int a = legal[rng.SampleIndex(probs)];
      if (a < hand) {
        SlotKnowledge k = hanabi->DeducedKnowledge(*s, actor, a);
        ++out.plays;
        if (k.color_known && k.rank_known) ++out.both;
        else if (k.color_known) ++out.color_only;
        else if (k.rank_known) ++out.rank_only;
        else ++out.none;
      }
      StatePtr next = SampleNext(env, *s, a, rng);
      for (int p = 0; p < env.NumPlayers(); ++p) {
        aohs[p].AddAction(a, env.ActionVisibleTo(*s, actor, p));
        aohs[p].AddObservation(env.Observation(*next, p));
      }
      s = std::move(next);
    }
  }
  return out;
}

std::string GroundedReportJson(const GroundedPlayReport& r) {
  nlohmann::json doc;
  doc["format"] = "obl.grounded/1";
  doc["episodes"] = r.episodes;
  doc["plays"] = r.plays;
  doc["counts"] = {{"both", r.both},
                   {"color_only", r.color_only},
                   {"rank_only", r.rank_only},
                   {"none", r.none}};
  doc["fractions"] = {{"both", r.frac_both()},
                      {"color_only", r.frac_color_only()},
                      {"rank_only", r.frac_rank_only()},
                      {"none", r.frac_none()}};
  return doc.dump(1) + "\n";
}

}  // namespace obl
