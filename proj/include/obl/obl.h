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

// Public C surface of the toolkit. Everything the command line tool can do
// goes through obl_run; the env handle exists so embedders can validate a
// configuration and read its identity without running a command.

#ifndef OBL_OBL_H_
#define OBL_OBL_H_

#ifdef __cplusplus
extern "C" {
#endif

// Status codes returned by every fallible call. They double as the process
// exit codes of the bundled command line tool.
typedef enum obl_status {
  OBL_OK = 0,
  OBL_VERIFY_FAILED = 1,
  OBL_USAGE_ERROR = 2,
  OBL_BUDGET_EXCEEDED = 3,
} obl_status;

// Library version as a static string; never free it.
const char* obl_version(void);

// Message for the most recent failure on this thread, or an empty string.
// Valid until the next toolkit call on the same thread.
const char* obl_last_error(void);

// Frees a string the library handed out through an out-parameter.
void obl_string_free(char* s);

// Runs one toolkit command, exactly as the command line tool would.
//
// `command` is one of: solve, train, eval, verify, dump-dag, dump-belief,
// diff-policy. `options_json` is a json object whose keys take the same
// spellings as the command's long flags, e.g.
//
//   {"env": "toy", "levels": 2, "T": 0.0, "out": "/tmp/run"}
//
// List-valued inputs use arrays: "policies" for eval, "suites" for verify.
// A "config" key names a key=value file that is applied before the other
// keys, so explicit options override the file. NULL or empty options mean
// all defaults.
//
// When out_text is non-NULL, *out_text receives the human-readable report
// (even for failed runs; it may hold partial output). Free it with
// obl_string_free.
obl_status obl_run(const char* command, const char* options_json,
                   char** out_text);

// --- Env handles -----------------------------------------------------------

typedef struct obl_env obl_env;

// Opens a preset name or an env config file. NULL on failure; the reason is
// in obl_last_error.
obl_env* obl_env_open(const char* preset_or_path);
void obl_env_close(obl_env* env);

// Basic facts as json: kind, canonical config, config hash, name, player
// count, action count, max episode length. Artifact binding checks use the
// same hash. Free *out_json with obl_string_free.
obl_status obl_env_inspect(const obl_env* env, char** out_json);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // OBL_OBL_H_
