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

#include "obl/env.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "obl/mini_hanabi.h"
#include "obl/random_game.h"
#include "obl/stage_game.h"
#include "obl/toy_game.h"
#include "obl/util.h"

namespace obl {

std::string DecPomdp::ActionName(int action) const {
  return "a" + std::to_string(action);
}

namespace {

StatePtr PickFrom(std::vector<WeightedState> support, Rng& rng) {
  OBL_CHECK(!support.empty(), UsageError, "empty state support");
  double total = 0.0;
  for (const auto& ws : support) total += ws.prob;
  OBL_CHECK(total > 0.0, UsageError, "state support has zero mass");
  double x = rng.Uniform() * total;
  for (auto& ws : support) {
    x -= ws.prob;
    if (x <= 0.0) return std::move(ws.state);
  }
  return std::move(support.back().state);
}

}  // namespace

StatePtr SampleNext(const DecPomdp& env, const GameState& s, int action, Rng& rng) {
  return PickFrom(env.NextStates(s, action), rng);
}

StatePtr SampleInitial(const DecPomdp& env, Rng& rng) {
  if (const auto* hanabi = dynamic_cast<const MiniHanabiEnv*>(&env)) {
    return hanabi->SampleInitialState(rng);
  }
  return PickFrom(env.InitialStates(), rng);
}

void CheckReplayConsistency(const DecPomdp& env, const Trajectory& traj) {
  OBL_CHECK(!traj.steps.empty(), UsageError, "empty trajectory");
  for (int i = 0; i < traj.Length(); ++i) {
    const auto& step = traj.steps[i];
    bool last = i + 1 == traj.Length();
    if (last) {
      OBL_CHECK(step.action == -1, InconsistentHistoryError,
                "trailing step still carries an action");
      OBL_CHECK(!traj.terminal || env.IsTerminal(*step.state),
                InconsistentHistoryError, "trajectory marked terminal early");
      break;
    }
    OBL_CHECK(!env.IsTerminal(*step.state), InconsistentHistoryError,
              "action recorded at a terminal state");
    const auto legal = env.LegalActions(*step.state);
    OBL_CHECK(std::find(legal.begin(), legal.end(), step.action) != legal.end(),
              InconsistentHistoryError, "recorded action is illegal");
    double want = env.Reward(*step.state, step.action);
    OBL_CHECK(std::abs(want - step.reward) <= 1e-12, InconsistentHistoryError,
              "recorded reward diverges from the env");
    auto support = env.NextStates(*step.state, step.action);
    const std::string next_enc = traj.steps[i + 1].state->Encode();
    bool found = false;
    for (const auto& ws : support) {
      if (ws.prob > 0.0 && ws.state->Encode() == next_enc) {
        found = true;
        break;
      }
    }
    OBL_CHECK(found, InconsistentHistoryError,
              "recorded successor is outside the transition support");
  }
}

namespace {

std::string JoinInts(const std::vector<int>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

std::vector<int> ParseIntList(const std::string& s) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    std::string tok = comma == std::string::npos ? s.substr(pos)
                                                 : s.substr(pos, comma - pos);
    OBL_CHECK(!tok.empty(), UsageError, "empty entry in int list: " + s);
    out.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string EnvConfig::Canonical() const {
  std::ostringstream os;
  os << "env=" << env << "\n";
  os << "hanabi_colors=" << hanabi.num_colors << "\n";
  os << "hanabi_hand=" << hanabi.hand_size << "\n";
  os << "hanabi_hints=" << hanabi.hint_tokens << "\n";
  os << "hanabi_lives=" << hanabi.life_tokens << "\n";
  os << "hanabi_max_turns=" << hanabi.max_turns << "\n";
  os << "hanabi_ranks=" << JoinInts(hanabi.ranks) << "\n";
  os << "matrix_first_mover=" << matrix_first_mover << "\n";
  os << "random_seed=" << random_seed << "\n";
  return os.str();
}

std::string EnvConfig::Hash() const { return HexHash(Fnv1a64(Canonical())); }

EnvConfig ParseEnvConfig(const std::string& text) {
  EnvConfig config;
  bool saw_env = false;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    OBL_CHECK(eq != std::string::npos, UsageError,
              "line " + std::to_string(lineno) + ": expected key=value");
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    OBL_CHECK(!key.empty() && !value.empty(), UsageError,
              "line " + std::to_string(lineno) + ": empty key or value");
    if (key == "env") {
      config.env = value;
      saw_env = true;
    } else if (key == "hanabi_colors") {
      config.hanabi.num_colors = std::stoi(value);
    } else if (key == "hanabi_ranks") {
      config.hanabi.ranks = ParseIntList(value);
    } else if (key == "hanabi_hand") {
      config.hanabi.hand_size = std::stoi(value);
    } else if (key == "hanabi_hints") {
      config.hanabi.hint_tokens = std::stoi(value);
    } else if (key == "hanabi_lives") {
      config.hanabi.life_tokens = std::stoi(value);
    } else if (key == "hanabi_max_turns") {
      config.hanabi.max_turns = std::stoi(value);
    } else if (key == "matrix_first_mover") {
      config.matrix_first_mover = std::stoi(value);
      OBL_CHECK(config.matrix_first_mover == 0 || config.matrix_first_mover == 1,
                UsageError, "matrix_first_mover must be 0 or 1");
    } else if (key == "random_seed") {
      config.random_seed = std::stoull(value);
    } else {
      throw UsageError("unknown config key: " + key);
    }
  }
  OBL_CHECK(saw_env, UsageError, "config is missing the env key");
  return config;
}

EnvConfig ParseEnvConfigFile(const std::string& path) {
  return ParseEnvConfig(ReadFileOrThrow(path));
}

EnvPtr BuildEnv(const EnvConfig& config) {
  if (config.env == "toy_game") return MakeToyGame();
  if (config.env == "matrix_coord") {
    std::vector<int> order = config.matrix_first_mover == 0
                                 ? std::vector<int>{0, 1}
                                 : std::vector<int>{1, 0};
    return ConvertSimultaneous(CoordinationMatrixGame(), order);
  }
  if (config.env == "mini_hanabi") return MakeMiniHanabi(config.hanabi);
  if (config.env == "random") return MakeRandomGame(config.random_seed);
  throw UsageError("unknown env kind: " + config.env);
}

EnvConfig PresetConfig(const std::string& name) {
  EnvConfig config;
  if (name == "toy") {
    config.env = "toy_game";
  } else if (name == "matrix") {
    config.env = "matrix_coord";
  } else if (name == "hanabi") {
    config.env = "mini_hanabi";
  } else if (name == "hanabi_micro") {
    config.env = "mini_hanabi";
    config.hanabi.num_colors = 2;
    config.hanabi.ranks = {1, 2};
    config.hanabi.hand_size = 1;
    config.hanabi.hint_tokens = 1;
    config.hanabi.life_tokens = 1;
    config.hanabi.max_turns = 12;
  } else {
    throw UsageError("unknown preset: " + name);
  }
  return config;
}

}  // namespace obl
