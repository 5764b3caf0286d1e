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

#ifndef OBL_COMMANDS_H_
#define OBL_COMMANDS_H_

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "obl/env.h"

namespace obl {

// Process exit codes shared by every frontend.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

// Each command is a plain options struct plus a Run function. Run functions
// write human-readable results to `out`, persist artifacts under the
// command's out_dir (layout: policies/, beliefs/, reports/, curves/,
// manifest.json), and return an exit code for soft failures; hard errors
// throw and are mapped by GuardedRun.
//
// `env` fields accept a preset name (toy, matrix, hanabi, hanabi_micro) or a
// path to a key=value config file. All randomness
// inside a command descends from its single `seed` via labeled splits, and
// the manifest records every derived seed.
//
// ApplyXOption(cmd, key, value) sets one field from its textual form; the
// run-config file and flag overrides both funnel through it, so the two
// spellings cannot drift apart. Unknown keys throw UsageError.

struct SolveCmd {
  std::string env;
  std::string mode = "obl";  // obl | klevel
  std::string base_policy;   // artifact path; empty means uniform
  int levels = 1;
  double temperature = 0.0;
  std::string tie = "lowest";  // lowest | random
  uint64_t seed = 1;
  int jobs = 1;
  std::string out_dir;
  bool dump_beliefs = false;
};
void ApplySolveOption(SolveCmd& cmd, const std::string& key, const std::string& value);
int RunSolve(const SolveCmd& cmd, std::ostream& out);

struct TrainCmd {
  std::string env;
  std::string mode = "lbobl";  // selfplay | qobl | lbobl
  int level = 1;               // lineage label; levels above 1 need base_policy
  std::string base_policy;     // pi0 artifact; empty means uniform
  std::string warm_start;      // q-table artifact to initialize from
  std::string belief_in;       // fitted counts artifact (lbobl); empty refits
  std::string oracle;          // exact policy for the curve's distance column
  uint64_t episodes = 200000;
  uint64_t belief_episodes = 100000;
  double alpha = 1.0;
  // Negative knobs keep the per-mode defaults.
  double lr = -1.0;
  double eps_start = -1.0;
  double eps_end = -1.0;
  double eps_frac = -1.0;
  uint64_t sync_interval = 10;
  uint64_t replay_capacity = 1024;
  uint64_t batch_size = 4;
  int bootstrap_steps = 0;
  uint64_t eval_interval = 0;
  uint64_t eval_episodes = 500;
  bool exact_eval = false;  // evaluate curve points by enumeration, not rollouts
  uint64_t oracle_min_visits = 1000;
  uint64_t seed = 1;
  int jobs = 1;
  std::string out_dir;
};
void ApplyTrainOption(TrainCmd& cmd, const std::string& key, const std::string& value);
int RunTrain(const TrainCmd& cmd, std::ostream& out);

struct EvalCmd {
  std::string env;
  std::vector<std::string> policies;  // artifact paths, one per matrix label
  bool exact = false;                 // enumerate instead of sampling
  uint64_t episodes = 10000;
  bool grounded = false;  // per-policy grounded-play report (hanabi only)
  uint64_t seed = 1;
  int jobs = 1;
  std::string out_dir;
};
void ApplyEvalOption(EvalCmd& cmd, const std::string& key, const std::string& value);
int RunEval(const EvalCmd& cmd, std::ostream& out);

struct VerifyCmd {
  std::vector<std::string> suites;  // empty runs all of them
  uint64_t seed = 1;
  int jobs = 1;
  std::string out_dir;  // optional; reports also print to `out`
};
void ApplyVerifyOption(VerifyCmd& cmd, const std::string& key, const std::string& value);
// Returns kExitVerifyFail when any requested suite reports a violation.
int RunVerify(const VerifyCmd& cmd, std::ostream& out);

struct DumpDagCmd {
  std::string env;
  std::string out_file;  // empty prints to `out`
};
void ApplyDumpDagOption(DumpDagCmd& cmd, const std::string& key, const std::string& value);
int RunDumpDag(const DumpDagCmd& cmd, std::ostream& out);

struct DumpBeliefCmd {
  std::string env;
  std::string kind = "tremble";  // exact | tremble | grounded
  std::string base_policy;       // conditioning policy; empty means uniform
  std::string counts;            // fitted counts artifact; switches to count mode
  std::string aoh;               // history key to dump in count mode
  std::string out_file;          // empty prints to `out`
};
void ApplyDumpBeliefOption(DumpBeliefCmd& cmd, const std::string& key,
                           const std::string& value);
int RunDumpBelief(const DumpBeliefCmd& cmd, std::ostream& out);

struct DiffPolicyCmd {
  std::string a;
  std::string b;
  uint64_t worst = 10;
};
void ApplyDiffPolicyOption(DiffPolicyCmd& cmd, const std::string& key,
                           const std::string& value);
int RunDiffPolicy(const DiffPolicyCmd& cmd, std::ostream& out);

// Runs `body`, mapping thrown toolkit errors onto the exit-code contract
// (config and artifact problems 2, budget overruns 3) with the diagnostic
// printed to `err`.
int GuardedRun(const std::function<int()>& body, std::ostream& err);

// Parses run-config text: one key=value per line, '#' comments and blank
// lines ignored. Returned pairs preserve file order so later lines win.
std::vector<std::pair<std::string, std::string>> ParseRunConfig(const std::string& text);

// Resolves a command's env argument: an existing file parses as a key=value
// env config, anything else must be a preset name.
EnvConfig ResolveEnvArg(const std::string& arg);

}  // namespace obl

#endif  // OBL_COMMANDS_H_
