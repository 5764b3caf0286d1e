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

#include "obl/obl.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "obl/commands.h"
#include "obl/env.h"
#include "obl/err.h"
#include "obl/manifest.h"
#include "obl/util.h"

struct obl_env {
  obl::EnvConfig config;
  obl::EnvPtr env;
};

namespace {

thread_local std::string t_last_error;

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string ScalarToString(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

using Apply = std::function<void(const std::string&, const std::string&)>;

// Config file first, explicit keys second, so explicit options win.
void ApplyOptions(const nlohmann::json& doc, const std::set<std::string>& lists,
                  const Apply& apply) {
  if (doc.contains("config")) {
    const std::string path = doc.at("config").get<std::string>();
    for (const auto& [key, value] : obl::ParseRunConfig(obl::ReadFileOrThrow(path)))
      apply(key, value);
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "config" || lists.count(key) > 0) continue;
    apply(key, ScalarToString(value));
  }
}

std::vector<std::string> StringList(const nlohmann::json& doc,
                                    const std::string& key) {
  std::vector<std::string> out;
  if (!doc.contains(key)) return out;
  const auto& v = doc.at(key);
  if (v.is_string()) {
    out.push_back(v.get<std::string>());
    return out;
  }
  OBL_CHECK(v.is_array(), UsageError,
            "option '" + key + "' wants a string or an array of strings");
  for (const auto& item : v) {
    OBL_CHECK(item.is_string(), UsageError,
              "option '" + key + "' wants strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

int RunNamed(const std::string& name, const nlohmann::json& doc,
             std::ostream& out) {
  if (name == "solve") {
    obl::SolveCmd cmd;
    ApplyOptions(doc, {}, [&](const std::string& k, const std::string& v) {
      obl::ApplySolveOption(cmd, k, v);
    });
    return obl::RunSolve(cmd, out);
  }
  if (name == "train") {
    obl::TrainCmd cmd;
    ApplyOptions(doc, {}, [&](const std::string& k, const std::string& v) {
      obl::ApplyTrainOption(cmd, k, v);
    });
    return obl::RunTrain(cmd, out);
  }
  if (name == "eval") {
    obl::EvalCmd cmd;
    ApplyOptions(doc, {"policies"}, [&](const std::string& k, const std::string& v) {
      obl::ApplyEvalOption(cmd, k, v);
    });
    cmd.policies = StringList(doc, "policies");
    return obl::RunEval(cmd, out);
  }
  if (name == "verify") {
    obl::VerifyCmd cmd;
    ApplyOptions(doc, {"suites"}, [&](const std::string& k, const std::string& v) {
      obl::ApplyVerifyOption(cmd, k, v);
    });
    cmd.suites = StringList(doc, "suites");
    return obl::RunVerify(cmd, out);
  }
  if (name == "dump-dag") {
    obl::DumpDagCmd cmd;
    ApplyOptions(doc, {}, [&](const std::string& k, const std::string& v) {
      obl::ApplyDumpDagOption(cmd, k, v);
    });
    return obl::RunDumpDag(cmd, out);
  }
  if (name == "dump-belief") {
    obl::DumpBeliefCmd cmd;
    ApplyOptions(doc, {}, [&](const std::string& k, const std::string& v) {
      obl::ApplyDumpBeliefOption(cmd, k, v);
    });
    return obl::RunDumpBelief(cmd, out);
  }
  if (name == "diff-policy") {
    obl::DiffPolicyCmd cmd;
    ApplyOptions(doc, {}, [&](const std::string& k, const std::string& v) {
      obl::ApplyDiffPolicyOption(cmd, k, v);
    });
    return obl::RunDiffPolicy(cmd, out);
  }
  throw obl::UsageError("unknown command '" + name + "'");
}

}  // namespace

extern "C" {

const char* obl_version(void) { return obl::kToolVersion; }

const char* obl_last_error(void) { return t_last_error.c_str(); }

void obl_string_free(char* s) { std::free(s); }

obl_status obl_run(const char* command, const char* options_json,
                   char** out_text) {
  if (out_text != nullptr) *out_text = nullptr;
  t_last_error.clear();
  std::ostringstream text;
  obl_status status = OBL_OK;
  try {
    OBL_CHECK(command != nullptr && *command != '\0', UsageError,
              "command is null or empty");
    nlohmann::json doc = nlohmann::json::object();
    if (options_json != nullptr && *options_json != '\0') {
      doc = nlohmann::json::parse(options_json, nullptr, false);
      OBL_CHECK(!doc.is_discarded() && doc.is_object(), UsageError,
                "options must be a json object");
    }
    status = static_cast<obl_status>(RunNamed(command, doc, text));
  } catch (const obl::BudgetExceededError& e) {
    t_last_error = e.what();
    status = OBL_BUDGET_EXCEEDED;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    status = OBL_USAGE_ERROR;
  }
  if (out_text != nullptr) *out_text = CopyString(text.str());
  return status;
}

obl_env* obl_env_open(const char* preset_or_path) {
  t_last_error.clear();
  try {
    OBL_CHECK(preset_or_path != nullptr && *preset_or_path != '\0',
              UsageError, "env spec is null or empty");
    obl::EnvConfig config = obl::ResolveEnvArg(preset_or_path);
    obl::EnvPtr env = obl::BuildEnv(config);
    return new obl_env{std::move(config), std::move(env)};
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return nullptr;
  }
}

void obl_env_close(obl_env* env) { delete env; }

obl_status obl_env_inspect(const obl_env* env, char** out_json) {
  if (out_json != nullptr) *out_json = nullptr;
  t_last_error.clear();
  try {
    OBL_CHECK(env != nullptr, UsageError, "env handle is null");
    OBL_CHECK(out_json != nullptr, UsageError, "out_json is null");
    nlohmann::json doc;
    doc["kind"] = env->config.env;
    doc["canonical"] = env->config.Canonical();
    doc["hash"] = env->config.Hash();
    doc["name"] = env->env->Name();
    doc["players"] = env->env->NumPlayers();
    doc["actions"] = env->env->NumDistinctActions();
    doc["max_length"] = env->env->MaxGameLength();
    *out_json = CopyString(doc.dump(1) + "\n");
    return OBL_OK;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return OBL_USAGE_ERROR;
  }
}

}  // extern "C"
