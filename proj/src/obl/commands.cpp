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

#include "obl/commands.h"

#include <chrono>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "obl/belief.h"
#include "obl/count_belief.h"
#include "obl/crossplay.h"
#include "obl/env.h"
#include "obl/err.h"
#include "obl/grounded_report.h"
#include "obl/learner.h"
#include "obl/manifest.h"
#include "obl/rng.h"
#include "obl/selfplay.h"
#include "obl/solver.h"
#include "obl/tree.h"
#include "obl/util.h"
#include "obl/verify.h"

namespace obl {
namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double Sec() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

uint64_t ParseU64(const std::string& key, const std::string& value) {
  size_t pos = 0;
  uint64_t v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    pos = value.size() + 1;
  }
  OBL_CHECK(!value.empty() && value[0] != '-' && pos == value.size(), UsageError,
            "option '" + key + "' wants an unsigned integer, got '" + value + "'");
  return v;
}

int ParseInt(const std::string& key, const std::string& value) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(value, &pos);
  } catch (const std::exception&) {
    pos = value.size() + 1;
  }
  OBL_CHECK(!value.empty() && pos == value.size(), UsageError,
            "option '" + key + "' wants an integer, got '" + value + "'");
  return v;
}

double ParseF64(const std::string& key, const std::string& value) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = value.size() + 1;
  }
  OBL_CHECK(!value.empty() && pos == value.size(), UsageError,
            "option '" + key + "' wants a number, got '" + value + "'");
  return v;
}

bool ParseFlag(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw UsageError("option '" + key + "' wants a boolean, got '" + value + "'");
}

TieBreak ParseTie(const std::string& value) {
  if (value == "lowest") return TieBreak::kLowestIndex;
  if (value == "random") return TieBreak::kSeededRandom;
  throw UsageError("tie must be 'lowest' or 'random', got '" + value + "'");
}

void RecordInput(RunManifest& m, const std::string& path) {
  m.inputs[path] = HashFileContents(path);
}

std::string BaseName(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::string SafeToken(std::string s) {
  for (char& c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return s;
}

std::string DistToString(const ActionDist& dist) {
  std::string s = "{";
  bool first = true;
  for (const auto& [action, prob] : dist) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(action) + ": " + DoubleToString(prob);
  }
  return s + "}";
}

// Tiny policies are worth showing whole; anything bigger stays in the files.
void PrintPolicyIfSmall(std::ostream& out, const Policy& p) {
  if (p.Size() == 0 || p.Size() > 8) return;
  out << "  " << p.name << ":\n";
  for (const auto& [key, dist] : p.table())
    out << "    " << key << " -> " << DistToString(dist) << "\n";
}

void PrintMatrix(std::ostream& out, const CrossPlayMatrix& m) {
  out << "  cross-play, " << m.mode;
  if (m.mode == "sampled") out << " (" << m.episodes << " episodes per cell)";
  out << "\n";
  size_t w = 8;
  for (const auto& l : m.labels) w = std::max(w, l.size() + 2);
  const int iw = static_cast<int>(w);
  out << "  " << std::setw(iw) << "";
  for (const auto& l : m.labels) out << std::setw(iw) << l;
  out << "\n";
  for (size_t i = 0; i < m.labels.size(); ++i) {
    out << "  " << std::setw(iw) << m.labels[i];
    for (size_t j = 0; j < m.labels.size(); ++j)
      out << std::setw(iw) << DoubleToString(m.mean[i][j]);
    out << "\n";
  }
  if (m.labels.size() > 1) {
    double diag = 0.0, off = 0.0;
    const size_t n = m.labels.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        (i == j ? diag : off) += m.mean[i][j];
    out << "  diagonal mean " << DoubleToString(diag / static_cast<double>(n))
        << ", off-diagonal mean "
        << DoubleToString(off / static_cast<double>(n * n - n)) << "\n";
  }
}

std::string CurveCsv(const std::vector<CurvePoint>& curve, bool with_oracle) {
  std::string s = with_oracle ? "episode,eval,oracle_distance\n" : "episode,eval\n";
  for (const auto& p : curve) {
    s += std::to_string(p.episode) + "," + DoubleToString(p.eval);
    if (with_oracle) {
      s += ",";
      // Negative means no key had enough visits yet; leave the field blank.
      if (p.oracle_distance >= 0.0) s += DoubleToString(p.oracle_distance);
    }
    s += "\n";
  }
  return s;
}

void FinishManifest(RunManifest& m, const Timer& timer, const std::string& out_dir,
                    std::ostream& out) {
  m.wall_clock_sec = timer.Sec();
  SaveManifest(m, JoinPath(out_dir, "manifest.json"));
  out << "  wrote " << m.outputs.size() << " artifacts under " << out_dir << "\n";
}

}  // namespace

EnvConfig ResolveEnvArg(const std::string& arg) {
  OBL_CHECK(!arg.empty(), UsageError,
            "an env is required (preset name or config file path)");
  if (FileExists(arg)) return ParseEnvConfigFile(arg);
  return PresetConfig(arg);
}

std::vector<std::pair<std::string, std::string>> ParseRunConfig(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto strip = [](const std::string& s) {
    const size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    OBL_CHECK(eq != std::string::npos, UsageError,
              "run config line " + std::to_string(line_no) +
                  " is not key=value: '" + line + "'");
    const std::string key = strip(line.substr(0, eq));
    OBL_CHECK(!key.empty(), UsageError,
              "run config line " + std::to_string(line_no) + " has an empty key");
    pairs.emplace_back(key, strip(line.substr(eq + 1)));
  }
  return pairs;
}

void ApplySolveOption(SolveCmd& cmd, const std::string& key,
                      const std::string& value) {
  if (key == "env") cmd.env = value;
  else if (key == "mode") cmd.mode = value;
  else if (key == "base-policy") cmd.base_policy = value;
  else if (key == "levels") cmd.levels = ParseInt(key, value);
  else if (key == "T") cmd.temperature = ParseF64(key, value);
  else if (key == "tie") cmd.tie = value;
  else if (key == "seed") cmd.seed = ParseU64(key, value);
  else if (key == "jobs") cmd.jobs = ParseInt(key, value);
  else if (key == "out") cmd.out_dir = value;
  else if (key == "dump-beliefs") cmd.dump_beliefs = ParseFlag(key, value);
  else throw UsageError("unknown solve option '" + key + "'");
}

void ApplyTrainOption(TrainCmd& cmd, const std::string& key,
                      const std::string& value) {
  if (key == "env") cmd.env = value;
  else if (key == "mode") cmd.mode = value;
  else if (key == "level") cmd.level = ParseInt(key, value);
  else if (key == "base-policy") cmd.base_policy = value;
  else if (key == "warm-start") cmd.warm_start = value;
  else if (key == "belief-in") cmd.belief_in = value;
  else if (key == "oracle") cmd.oracle = value;
  else if (key == "episodes") cmd.episodes = ParseU64(key, value);
  else if (key == "belief-episodes") cmd.belief_episodes = ParseU64(key, value);
  else if (key == "alpha") cmd.alpha = ParseF64(key, value);
  else if (key == "lr") cmd.lr = ParseF64(key, value);
  else if (key == "eps-start") cmd.eps_start = ParseF64(key, value);
  else if (key == "eps-end") cmd.eps_end = ParseF64(key, value);
  else if (key == "eps-frac") cmd.eps_frac = ParseF64(key, value);
  else if (key == "sync-interval") cmd.sync_interval = ParseU64(key, value);
  else if (key == "replay-capacity") cmd.replay_capacity = ParseU64(key, value);
  else if (key == "batch-size") cmd.batch_size = ParseU64(key, value);
  else if (key == "bootstrap-steps") cmd.bootstrap_steps = ParseInt(key, value);
  else if (key == "eval-interval") cmd.eval_interval = ParseU64(key, value);
  else if (key == "eval-episodes") cmd.eval_episodes = ParseU64(key, value);
  else if (key == "exact-eval") cmd.exact_eval = ParseFlag(key, value);
  else if (key == "oracle-min-visits") cmd.oracle_min_visits = ParseU64(key, value);
  else if (key == "seed") cmd.seed = ParseU64(key, value);
  else if (key == "jobs") cmd.jobs = ParseInt(key, value);
  else if (key == "out") cmd.out_dir = value;
  else throw UsageError("unknown train option '" + key + "'");
}

void ApplyEvalOption(EvalCmd& cmd, const std::string& key,
                     const std::string& value) {
  if (key == "env") cmd.env = value;
  else if (key == "exact") cmd.exact = ParseFlag(key, value);
  else if (key == "episodes") cmd.episodes = ParseU64(key, value);
  else if (key == "grounded") cmd.grounded = ParseFlag(key, value);
  else if (key == "seed") cmd.seed = ParseU64(key, value);
  else if (key == "jobs") cmd.jobs = ParseInt(key, value);
  else if (key == "out") cmd.out_dir = value;
  else throw UsageError("unknown eval option '" + key + "'");
}

void ApplyVerifyOption(VerifyCmd& cmd, const std::string& key,
                       const std::string& value) {
  if (key == "seed") cmd.seed = ParseU64(key, value);
  else if (key == "jobs") cmd.jobs = ParseInt(key, value);
  else if (key == "out") cmd.out_dir = value;
  else throw UsageError("unknown verify option '" + key + "'");
}

void ApplyDumpDagOption(DumpDagCmd& cmd, const std::string& key,
                        const std::string& value) {
  if (key == "env") cmd.env = value;
  else if (key == "out-file") cmd.out_file = value;
  else throw UsageError("unknown dump-dag option '" + key + "'");
}

void ApplyDumpBeliefOption(DumpBeliefCmd& cmd, const std::string& key,
                           const std::string& value) {
  if (key == "env") cmd.env = value;
  else if (key == "kind") cmd.kind = value;
  else if (key == "base-policy") cmd.base_policy = value;
  else if (key == "counts") cmd.counts = value;
  else if (key == "aoh") cmd.aoh = value;
  else if (key == "out-file") cmd.out_file = value;
  else throw UsageError("unknown dump-belief option '" + key + "'");
}

void ApplyDiffPolicyOption(DiffPolicyCmd& cmd, const std::string& key,
                           const std::string& value) {
  if (key == "a") cmd.a = value;
  else if (key == "b") cmd.b = value;
  else if (key == "worst") cmd.worst = ParseU64(key, value);
  else throw UsageError("unknown diff-policy option '" + key + "'");
}

int RunSolve(const SolveCmd& cmd, std::ostream& out) {
  const Timer timer;
  OBL_CHECK(!cmd.out_dir.empty(), UsageError, "solve writes artifacts; out is required");
  OBL_CHECK(cmd.levels >= 1, UsageError, "levels must be at least 1");
  OBL_CHECK(cmd.jobs >= 1, UsageError, "jobs must be at least 1");
  OBL_CHECK(cmd.mode == "obl" || cmd.mode == "klevel", UsageError,
            "solve mode must be 'obl' or 'klevel', got '" + cmd.mode + "'");
  const EnvConfig cfg = ResolveEnvArg(cmd.env);
  const EnvPtr env = BuildEnv(cfg);
  const GameTree tree = GameTree::Enumerate(*env);

  RunManifest m;
  m.command = "solve";
  m.env_config_hash = cfg.Hash();
  m.seeds["master"] = cmd.seed;
  m.notes["env"] = cfg.Canonical();
  m.notes["mode"] = cmd.mode;
  m.notes["levels"] = std::to_string(cmd.levels);
  m.notes["T"] = DoubleToString(cmd.temperature);
  m.notes["tie"] = cmd.tie;
  m.notes["jobs"] = std::to_string(cmd.jobs);

  SolveOptions opts;
  opts.temperature = cmd.temperature;
  opts.tie_break = ParseTie(cmd.tie);
  opts.tie_seed = ChildSeed(cmd.seed, "tie");
  m.seeds["tie"] = opts.tie_seed;

  Policy pi0;
  if (!cmd.base_policy.empty()) {
    pi0 = LoadPolicy(cmd.base_policy, cfg.Hash());
    RecordInput(m, cmd.base_policy);
  } else {
    pi0 = UniformPolicy(tree);
    pi0.name = "uniform";
    pi0.env_hash = cfg.Hash();
  }

  EnsureDir(JoinPath(cmd.out_dir, "policies"));
  out << "solve " << cfg.env << ": mode " << cmd.mode << ", levels " << cmd.levels
      << ", T " << DoubleToString(cmd.temperature) << "\n";

  std::vector<Policy> written;
  if (cmd.mode == "obl") {
    auto hier = OblHierarchy(tree, pi0, cmd.levels, opts);
    for (size_t k = 0; k < hier.size(); ++k) {
      Policy p = std::move(hier[k].policy);
      p.name = "obl-level" + std::to_string(k + 1);
      p.env_hash = cfg.Hash();
      const std::string rel = "policies/" + p.name + ".policy.json";
      SavePolicy(p, JoinPath(cmd.out_dir, rel));
      m.outputs.push_back(rel);
      out << "  level " << k + 1 << ": selfplay value "
          << DoubleToString(hier[k].joint) << " (trembled groups "
          << hier[k].trembled_groups << ")\n";
      written.push_back(std::move(p));
    }
  } else {
    auto levels = KLevelHierarchy(tree, cmd.levels, opts);
    for (size_t k = 0; k < levels.size(); ++k) {
      Policy p = std::move(levels[k]);
      p.name = "klevel-level" + std::to_string(k);
      p.env_hash = cfg.Hash();
      const std::string rel = "policies/" + p.name + ".policy.json";
      SavePolicy(p, JoinPath(cmd.out_dir, rel));
      m.outputs.push_back(rel);
      out << "  level " << k << ": selfplay value "
          << DoubleToString(PolicyValue(tree, p).joint) << "\n";
      written.push_back(std::move(p));
    }
  }
  PrintPolicyIfSmall(out, written.back());

  if (cmd.dump_beliefs) {
    EnsureDir(JoinPath(cmd.out_dir, "beliefs"));
    for (const char* kind : {"tremble", "grounded"}) {
      const std::string rel = std::string("beliefs/") + kind + ".json";
      WriteFileOrThrow(JoinPath(cmd.out_dir, rel), DumpBeliefsJson(tree, pi0, kind));
      m.outputs.push_back(rel);
    }
  }

  FinishManifest(m, timer, cmd.out_dir, out);
  return kExitOk;
}

int RunTrain(const TrainCmd& cmd, std::ostream& out) {
  const Timer timer;
  OBL_CHECK(!cmd.out_dir.empty(), UsageError, "train writes artifacts; out is required");
  OBL_CHECK(cmd.jobs >= 1, UsageError, "jobs must be at least 1");
  OBL_CHECK(cmd.episodes >= 1, UsageError, "episodes must be at least 1");
  OBL_CHECK(cmd.level >= 1, UsageError, "level must be at least 1");
  const bool selfplay = cmd.mode == "selfplay";
  const bool qobl = cmd.mode == "qobl";
  const bool lbobl = cmd.mode == "lbobl";
  OBL_CHECK(selfplay || qobl || lbobl, UsageError,
            "train mode must be 'selfplay', 'qobl' or 'lbobl', got '" + cmd.mode + "'");
  OBL_CHECK(!selfplay || cmd.level == 1, UsageError,
            "selfplay is a flat baseline; it has no levels");
  OBL_CHECK(cmd.level == 1 || !cmd.base_policy.empty(), UsageError,
            "level " + std::to_string(cmd.level) +
                " conditions on the previous level; pass it as base-policy");

  const EnvConfig cfg = ResolveEnvArg(cmd.env);
  const EnvPtr env = BuildEnv(cfg);

  RunManifest m;
  m.command = "train";
  m.env_config_hash = cfg.Hash();
  m.seeds["master"] = cmd.seed;
  m.notes["env"] = cfg.Canonical();
  m.notes["mode"] = cmd.mode;
  m.notes["level"] = std::to_string(cmd.level);
  m.notes["episodes"] = std::to_string(cmd.episodes);
  m.notes["jobs"] = std::to_string(cmd.jobs);

  Policy pi0;
  pi0.name = "uniform";
  pi0.env_hash = cfg.Hash();
  if (!cmd.base_policy.empty()) {
    pi0 = LoadPolicy(cmd.base_policy, cfg.Hash());
    RecordInput(m, cmd.base_policy);
  }
  QTable warm;
  const QTable* warm_ptr = nullptr;
  if (!cmd.warm_start.empty()) {
    warm = LoadQTable(cmd.warm_start, cfg.Hash());
    warm_ptr = &warm;
    RecordInput(m, cmd.warm_start);
  }
  Policy oracle;
  const Policy* oracle_ptr = nullptr;
  if (!cmd.oracle.empty()) {
    oracle = LoadPolicy(cmd.oracle, cfg.Hash());
    oracle_ptr = &oracle;
    RecordInput(m, cmd.oracle);
  }
  std::optional<GameTree> eval_tree;
  if (cmd.exact_eval) eval_tree.emplace(GameTree::Enumerate(*env));

  EnsureDir(JoinPath(cmd.out_dir, "policies"));
  EnsureDir(JoinPath(cmd.out_dir, "reports"));
  const std::string stem =
      selfplay ? "selfplay" : cmd.mode + "-level" + std::to_string(cmd.level);
  out << "train " << cfg.env << ": mode " << cmd.mode << ", " << cmd.episodes
      << " episodes\n";

  const uint64_t train_seed = ChildSeed(cmd.seed, "train");
  m.seeds["train"] = train_seed;

  QTable q;
  Policy greedy;
  std::vector<CurvePoint> curve;
  nlohmann::json report;
  report["format"] = "obl.trainreport/1";
  report["mode"] = cmd.mode;
  report["level"] = cmd.level;
  report["episodes"] = cmd.episodes;

  if (selfplay) {
    SelfplayOptions sp;
    sp.episodes = cmd.episodes;
    if (cmd.lr >= 0.0) sp.lr = cmd.lr;
    if (cmd.eps_start >= 0.0) sp.eps_start = cmd.eps_start;
    if (cmd.eps_end >= 0.0) sp.eps_end = cmd.eps_end;
    if (cmd.eps_frac >= 0.0) sp.eps_anneal_frac = cmd.eps_frac;
    sp.seed = train_seed;
    sp.warm_start = warm_ptr;
    sp.eval_interval = cmd.eval_interval;
    sp.eval_tree = eval_tree ? &*eval_tree : nullptr;
    sp.eval_episodes = cmd.eval_episodes;
    auto res = SelfplayTrain(*env, sp);
    q = std::move(res.q);
    greedy = std::move(res.greedy);
    curve = std::move(res.curve);
  } else {
    LearnerOptions lo;
    lo.episodes = cmd.episodes;
    if (cmd.lr >= 0.0) lo.lr = cmd.lr;
    if (cmd.eps_start >= 0.0) lo.eps_start = cmd.eps_start;
    if (cmd.eps_end >= 0.0) lo.eps_end = cmd.eps_end;
    if (cmd.eps_frac >= 0.0) lo.eps_anneal_frac = cmd.eps_frac;
    lo.bootstrap_steps = cmd.bootstrap_steps;
    lo.replay_capacity = cmd.replay_capacity;
    lo.batch_size = static_cast<int>(cmd.batch_size);
    lo.sync_interval = cmd.sync_interval;
    lo.seed = train_seed;
    lo.warm_start = warm_ptr;
    lo.eval_interval = cmd.eval_interval;
    lo.eval_tree = eval_tree ? &*eval_tree : nullptr;
    lo.eval_episodes = cmd.eval_episodes;
    lo.oracle = oracle_ptr;
    lo.oracle_min_visits = cmd.oracle_min_visits;

    LearnerResult res;
    if (qobl) {
      res = QOblTrain(*env, pi0, lo);
    } else {
      CountBeliefModel belief;
      if (!cmd.belief_in.empty()) {
        belief = LoadCountBelief(cmd.belief_in, cfg.Hash());
        RecordInput(m, cmd.belief_in);
      } else {
        const uint64_t belief_seed = ChildSeed(cmd.seed, "belief");
        m.seeds["belief"] = belief_seed;
        out << "  fitting belief: " << cmd.belief_episodes << " episodes of "
            << pi0.name << ", alpha " << DoubleToString(cmd.alpha) << "\n";
        belief = FitCountBelief(*env, pi0, cmd.belief_episodes, cmd.alpha,
                                belief_seed);
        EnsureDir(JoinPath(cmd.out_dir, "beliefs"));
        const std::string rel = "beliefs/counts.json";
        SaveCountBelief(belief, JoinPath(cmd.out_dir, rel));
        m.outputs.push_back(rel);
        out << "  belief covers " << belief.NumAohs() << " histories\n";
      }
      res = LbOblTrain(*env, belief, lo);
    }
    q = std::move(res.q);
    greedy = std::move(res.greedy);
    curve = std::move(res.curve);
    report["mean_reuse"] = res.mean_reuse;
    report["generations"] = res.generations;
    report["on_policy_fraction"] = res.on_policy_fraction;
    m.notes["mean_reuse"] = DoubleToString(res.mean_reuse);
    m.notes["generations"] = std::to_string(res.generations);
  }

  q.name = stem;
  q.env_hash = cfg.Hash();
  greedy.name = stem;
  greedy.env_hash = cfg.Hash();
  {
    const std::string rel = "policies/" + stem + ".policy.json";
    SavePolicy(greedy, JoinPath(cmd.out_dir, rel));
    m.outputs.push_back(rel);
  }
  {
    const std::string rel = "policies/" + stem + ".qtable.json";
    SaveQTable(q, JoinPath(cmd.out_dir, rel));
    m.outputs.push_back(rel);
  }
  if (cmd.eval_interval > 0) {
    EnsureDir(JoinPath(cmd.out_dir, "curves"));
    const std::string rel = "curves/train.csv";
    WriteFileOrThrow(JoinPath(cmd.out_dir, rel), CurveCsv(curve, oracle_ptr != nullptr));
    m.outputs.push_back(rel);
  }
  report["table_keys"] = q.Size();
  report["greedy_keys"] = greedy.Size();
  if (!curve.empty()) {
    report["final_eval"] = curve.back().eval;
    if (curve.back().oracle_distance >= 0.0)
      report["final_oracle_distance"] = curve.back().oracle_distance;
  }
  {
    const std::string rel = "reports/train.json";
    WriteFileOrThrow(JoinPath(cmd.out_dir, rel), report.dump(1) + "\n");
    m.outputs.push_back(rel);
  }

  out << "  table keys " << q.Size() << ", greedy keys " << greedy.Size() << "\n";
  if (!curve.empty()) {
    out << "  final eval " << DoubleToString(curve.back().eval);
    if (curve.back().oracle_distance >= 0.0)
      out << ", oracle distance " << DoubleToString(curve.back().oracle_distance);
    out << "\n";
  }
  PrintPolicyIfSmall(out, greedy);
  FinishManifest(m, timer, cmd.out_dir, out);
  return kExitOk;
}

int RunEval(const EvalCmd& cmd, std::ostream& out) {
  const Timer timer;
  OBL_CHECK(!cmd.out_dir.empty(), UsageError, "eval writes reports; out is required");
  OBL_CHECK(!cmd.policies.empty(), UsageError,
            "eval needs at least one policy artifact");
  OBL_CHECK(cmd.jobs >= 1, UsageError, "jobs must be at least 1");
  OBL_CHECK(cmd.exact || cmd.episodes >= 1, UsageError,
            "sampled eval needs episodes >= 1");
  const EnvConfig cfg = ResolveEnvArg(cmd.env);
  const EnvPtr env = BuildEnv(cfg);

  RunManifest m;
  m.command = "eval";
  m.env_config_hash = cfg.Hash();
  m.seeds["master"] = cmd.seed;
  m.notes["env"] = cfg.Canonical();
  m.notes["mode"] = cmd.exact ? "exact" : "sampled";
  m.notes["jobs"] = std::to_string(cmd.jobs);

  std::vector<Policy> policies;
  policies.reserve(cmd.policies.size());
  for (const auto& path : cmd.policies) {
    policies.push_back(LoadPolicy(path, cfg.Hash()));
    RecordInput(m, path);
  }
  std::vector<std::string> labels;
  std::map<std::string, int> name_uses;
  for (size_t i = 0; i < policies.size(); ++i) {
    std::string label = policies[i].name.empty() ? BaseName(cmd.policies[i])
                                                 : policies[i].name;
    ++name_uses[label];
    labels.push_back(std::move(label));
  }
  for (size_t i = 0; i < labels.size(); ++i)
    if (name_uses[labels[i]] > 1) labels[i] += "#" + std::to_string(i);

  std::vector<const Policy*> ptrs;
  ptrs.reserve(policies.size());
  for (const auto& p : policies) ptrs.push_back(&p);

  out << "eval " << cfg.env << ": " << policies.size() << " policies, "
      << (cmd.exact ? "exact" : "sampled") << "\n";
  CrossPlayMatrix matrix;
  if (cmd.exact) {
    const GameTree tree = GameTree::Enumerate(*env);
    matrix = ExactCrossPlay(tree, ptrs, labels);
  } else {
    const uint64_t xseed = ChildSeed(cmd.seed, "crossplay");
    m.seeds["crossplay"] = xseed;
    matrix = SampledCrossPlay(*env, ptrs, labels, cmd.episodes, xseed);
  }

  EnsureDir(JoinPath(cmd.out_dir, "reports"));
  WriteFileOrThrow(JoinPath(cmd.out_dir, "reports/crossplay.csv"),
                   CrossPlayCsv(matrix));
  m.outputs.push_back("reports/crossplay.csv");
  WriteFileOrThrow(JoinPath(cmd.out_dir, "reports/crossplay.json"),
                   CrossPlayJson(matrix));
  m.outputs.push_back("reports/crossplay.json");
  PrintMatrix(out, matrix);

  if (cmd.grounded) {
    for (size_t i = 0; i < policies.size(); ++i) {
      const uint64_t gseed = ChildSeed(cmd.seed, "grounded", i);
      m.seeds["grounded:" + labels[i]] = gseed;
      const auto rep = GroundedPlayEval(*env, policies[i], cmd.episodes, gseed);
      const std::string rel = "reports/grounded-" + SafeToken(labels[i]) + ".json";
      WriteFileOrThrow(JoinPath(cmd.out_dir, rel), GroundedReportJson(rep));
      m.outputs.push_back(rel);
      out << "  grounded " << labels[i] << ": both "
          << DoubleToString(rep.frac_both()) << ", color only "
          << DoubleToString(rep.frac_color_only()) << ", rank only "
          << DoubleToString(rep.frac_rank_only()) << ", none "
          << DoubleToString(rep.frac_none()) << " (" << rep.plays << " plays)\n";
    }
  }

  FinishManifest(m, timer, cmd.out_dir, out);
  return kExitOk;
}

int RunVerify(const VerifyCmd& cmd, std::ostream& out) {
  const Timer timer;
  OBL_CHECK(cmd.jobs >= 1, UsageError, "jobs must be at least 1");
  const std::vector<std::string> suites =
      cmd.suites.empty() ? VerifySuiteNames() : cmd.suites;

  RunManifest m;
  m.command = "verify";
  m.seeds["master"] = cmd.seed;
  m.notes["jobs"] = std::to_string(cmd.jobs);
  if (!cmd.out_dir.empty()) EnsureDir(JoinPath(cmd.out_dir, "reports"));

  bool all_pass = true;
  for (const auto& name : suites) {
    const VerificationReport r = RunVerifySuite(name, cmd.seed);
    all_pass = all_pass && r.pass;
    out << "  [" << (r.pass ? "PASS" : "FAIL") << "] " << r.suite << ": worst "
        << DoubleToString(r.max_violation) << " vs bound "
        << DoubleToString(r.bound) << " over " << r.instances << " instances\n";
    if (!r.pass && !r.detail.empty()) out << "         " << r.detail << "\n";
    if (!cmd.out_dir.empty()) {
      const std::string rel = "reports/" + r.suite + ".json";
      WriteFileOrThrow(JoinPath(cmd.out_dir, rel), VerifyReportJson(r));
      m.outputs.push_back(rel);
    }
  }
  out << (all_pass ? "  verification passed" : "  verification FAILED") << " ("
      << suites.size() << " suites)\n";
  if (!cmd.out_dir.empty()) FinishManifest(m, timer, cmd.out_dir, out);
  return all_pass ? kExitOk : kExitVerifyFail;
}

int RunDumpDag(const DumpDagCmd& cmd, std::ostream& out) {
  const EnvConfig cfg = ResolveEnvArg(cmd.env);
  const EnvPtr env = BuildEnv(cfg);
  const GameTree tree = GameTree::Enumerate(*env);
  const std::string doc = DumpDagJson(tree);
  if (cmd.out_file.empty()) {
    out << doc;
    if (doc.empty() || doc.back() != '\n') out << "\n";
  } else {
    WriteFileOrThrow(cmd.out_file, doc);
    out << "wrote " << cmd.out_file << "\n";
  }
  return kExitOk;
}

int RunDumpBelief(const DumpBeliefCmd& cmd, std::ostream& out) {
  const EnvConfig cfg = ResolveEnvArg(cmd.env);
  const EnvPtr env = BuildEnv(cfg);
  std::string doc;
  if (!cmd.counts.empty()) {
    OBL_CHECK(!cmd.aoh.empty(), UsageError,
              "count dumps need aoh (the history key to inspect)");
    const CountBeliefModel model = LoadCountBelief(cmd.counts, cfg.Hash());
    doc = DumpCountBeliefJson(model, *env, cmd.aoh);
  } else {
    const GameTree tree = GameTree::Enumerate(*env);
    Policy pi0;
    if (!cmd.base_policy.empty()) {
      pi0 = LoadPolicy(cmd.base_policy, cfg.Hash());
    } else {
      pi0 = UniformPolicy(tree);
      pi0.name = "uniform";
    }
    doc = DumpBeliefsJson(tree, pi0, cmd.kind);
  }
  if (cmd.out_file.empty()) {
    out << doc;
    if (doc.empty() || doc.back() != '\n') out << "\n";
  } else {
    WriteFileOrThrow(cmd.out_file, doc);
    out << "wrote " << cmd.out_file << "\n";
  }
  return kExitOk;
}

int RunDiffPolicy(const DiffPolicyCmd& cmd, std::ostream& out) {
  OBL_CHECK(!cmd.a.empty() && !cmd.b.empty(), UsageError,
            "diff-policy takes two policy artifact paths");
  const Policy a = LoadPolicy(cmd.a);
  const Policy b = LoadPolicy(cmd.b);
  if (!a.env_hash.empty() && !b.env_hash.empty() && a.env_hash != b.env_hash)
    out << "  note: the policies bind to different envs (" << a.env_hash
        << " vs " << b.env_hash << ")\n";
  const PolicyDiffReport r = DiffPolicies(a, b, cmd.worst);
  out << "  shared keys " << r.shared << ", only in a " << r.only_a
      << ", only in b " << r.only_b << "\n";
  out << "  max tv " << DoubleToString(r.max_tv) << ", mean tv "
      << DoubleToString(r.mean_tv) << "\n";
  for (const auto& [key, tv] : r.worst)
    if (tv > 0.0) out << "    " << DoubleToString(tv) << "  " << key << "\n";
  return kExitOk;
}

int GuardedRun(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace obl
