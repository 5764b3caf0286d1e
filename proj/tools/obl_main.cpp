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

// Command line front end. A thin shell: flags are collected verbatim into a
// json options object and handed to obl_run, so the library owns every
// default, every validation, and the exit-code contract. Only flags the user
// actually set are forwarded, which is what lets a --config file fill in the
// rest without fighting phantom defaults.

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "obl/obl.h"

namespace {

class OptionsBuilder {
 public:
  explicit OptionsBuilder(CLI::App* app) : app_(app) {}

  void Str(const std::string& names, const std::string& key,
           const std::string& help) {
    strings_.push_back(std::make_unique<std::string>());
    CLI::Option* opt = app_->add_option(names, *strings_.back(), help);
    scalars_.push_back({opt, key, strings_.back().get()});
  }

  void Flag(const std::string& names, const std::string& key,
            const std::string& help) {
    CLI::Option* opt = app_->add_flag(names, help);
    scalars_.push_back({opt, key, nullptr});
  }

  void List(const std::string& names, const std::string& key,
            const std::string& help) {
    vectors_.push_back(std::make_unique<std::vector<std::string>>());
    CLI::Option* opt = app_->add_option(names, *vectors_.back(), help);
    lists_.push_back({opt, key, vectors_.back().get()});
  }

  CLI::App* app() const { return app_; }

  nlohmann::json Collect() const {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& s : scalars_) {
      if (s.opt->count() == 0) continue;
      doc[s.key] = s.value != nullptr ? *s.value : "true";
    }
    for (const auto& l : lists_) {
      if (l.opt->count() == 0) continue;
      doc[l.key] = *l.values;
    }
    return doc;
  }

 private:
  struct Scalar {
    CLI::Option* opt;
    std::string key;
    const std::string* value;  // null for bare flags
  };
  struct ListOpt {
    CLI::Option* opt;
    std::string key;
    const std::vector<std::string>* values;
  };

  CLI::App* app_;
  std::vector<std::unique_ptr<std::string>> strings_;
  std::vector<std::unique_ptr<std::vector<std::string>>> vectors_;
  std::vector<Scalar> scalars_;
  std::vector<ListOpt> lists_;
};

void AddCommonRunFlags(OptionsBuilder* b) {
  b->Str("--seed", "seed", "master seed; all stage seeds derive from it");
  b->Str("--jobs", "jobs", "worker cap (every stage here is deterministic single-pass)");
  b->Str("--out", "out", "output directory (policies/, beliefs/, reports/, curves/)");
  b->Str("--config", "config", "key=value run config, applied before explicit flags");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and sampled off-belief policy toolkit for bounded "
               "turn-based cooperative games"};
  app.set_version_flag("--version", obl_version());
  app.require_subcommand(0, 1);

  std::vector<std::pair<std::string, std::unique_ptr<OptionsBuilder>>> commands;
  auto add = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    commands.emplace_back(name, std::make_unique<OptionsBuilder>(sub));
    return commands.back().second.get();
  };

  {
    auto* b = add("solve", "enumerate the game and apply the exact operator");
    b->Str("env,--env", "env", "preset name or env config file");
    b->Str("--mode", "mode", "obl | klevel");
    b->Str("--base-policy", "base-policy",
           "level-0 conditioning policy artifact (default: uniform)");
    b->Str("--levels", "levels", "how many operator levels to compute");
    b->Str("--T", "T", "softmax temperature; 0 picks the argmax");
    b->Str("--tie", "tie", "argmax tie-breaking: lowest | random");
    b->Flag("--dump-beliefs", "dump-beliefs",
            "also write the tremble and grounded belief tables");
    AddCommonRunFlags(b);
  }
  {
    auto* b = add("train", "fit a policy from sampled play");
    b->Str("env,--env", "env", "preset name or env config file");
    b->Str("--mode", "mode", "selfplay | qobl | lbobl");
    b->Str("--level", "level", "operator level this run realizes");
    b->Str("--base-policy", "base-policy",
           "conditioning policy artifact (default: uniform)");
    b->Str("--warm-start", "warm-start", "q-table artifact to start from");
    b->Str("--belief-in", "belief-in",
           "fitted counts artifact; skips the belief fit (lbobl)");
    b->Str("--oracle", "oracle",
           "exact policy artifact; adds the curve's distance column");
    b->Str("--episodes", "episodes", "training episodes");
    b->Str("--belief-episodes", "belief-episodes", "belief fit episodes (lbobl)");
    b->Str("--alpha", "alpha", "belief smoothing weight (lbobl)");
    b->Str("--lr", "lr", "learning rate; learners treat 0 as per-pair 1/n");
    b->Str("--eps-start", "eps-start", "exploration start");
    b->Str("--eps-end", "eps-end", "exploration floor");
    b->Str("--eps-frac", "eps-frac", "fraction of the run spent annealing");
    b->Str("--sync-interval", "sync-interval",
           "episodes between value-snapshot refreshes");
    b->Str("--replay-capacity", "replay-capacity", "replay ring size, episodes");
    b->Str("--batch-size", "batch-size", "replay samples consumed per episode");
    b->Str("--bootstrap-steps", "bootstrap-steps",
           "minimum fictitious steps before bootstrapping");
    b->Str("--eval-interval", "eval-interval",
           "episodes between curve points; 0 disables the curve");
    b->Str("--eval-episodes", "eval-episodes", "rollouts per sampled curve point");
    b->Flag("--exact-eval", "exact-eval",
            "evaluate curve points by enumeration instead of rollouts");
    b->Str("--oracle-min-visits", "oracle-min-visits",
           "visits a key needs before the oracle distance counts it");
    AddCommonRunFlags(b);
  }
  {
    auto* b = add("eval", "cross-play a set of policies");
    b->List("policies", "policies", "policy artifacts, one per matrix label");
    b->Str("--env", "env", "preset name or env config file");
    b->Flag("--exact", "exact", "enumerate instead of sampling");
    b->Str("--episodes", "episodes", "rollouts per matrix cell");
    b->Flag("--grounded", "grounded",
            "also classify what each policy knows when it plays a card");
    AddCommonRunFlags(b);
  }
  {
    auto* b = add("verify", "run the property suites");
    b->List("suites", "suites", "suite names (default: all)");
    AddCommonRunFlags(b);
  }
  {
    auto* b = add("dump-dag", "dump the enumerated game as json");
    b->Str("env,--env", "env", "preset name or env config file");
    b->Str("--out-file", "out-file", "write here instead of stdout");
  }
  {
    auto* b = add("dump-belief", "dump belief tables or one fitted record");
    b->Str("env,--env", "env", "preset name or env config file");
    b->Str("--kind", "kind", "exact | tremble | grounded");
    b->Str("--base-policy", "base-policy",
           "conditioning policy artifact (default: uniform)");
    b->Str("--counts", "counts", "fitted counts artifact (switches to count mode)");
    b->Str("--aoh", "aoh", "history key to inspect (count mode)");
    b->Str("--out-file", "out-file", "write here instead of stdout");
  }
  {
    auto* b = add("diff-policy", "compare two policy artifacts");
    b->Str("a", "a", "first policy artifact");
    b->Str("b", "b", "second policy artifact");
    b->Str("--worst", "worst", "how many worst keys to list");
  }

  CLI11_PARSE(app, argc, argv);

  for (const auto& [name, builder] : commands) {
    if (!builder->app()->parsed()) continue;
    const std::string options = builder->Collect().dump();
    char* text = nullptr;
    const obl_status status = obl_run(name.c_str(), options.c_str(), &text);
    if (text != nullptr) {
      std::fputs(text, stdout);
      obl_string_free(text);
    }
    if (status != OBL_OK) {
      const char* err = obl_last_error();
      if (err != nullptr && *err != '\0') std::fprintf(stderr, "error: %s\n", err);
    }
    return status;
  }

  std::fputs(app.help().c_str(), stdout);
  return OBL_USAGE_ERROR;
}
