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

#ifndef OBL_ERR_H_
#define OBL_ERR_H_

#include <stdexcept>
#include <string>

namespace obl {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad arguments, malformed config files, contradictory options.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Exact enumeration exceeded the configured budget.
class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(const std::string& msg) : Error(msg) {}
};

// An action-observation history has zero probability under the queried policy.
class UnreachableHistoryError : public Error {
 public:
  explicit UnreachableHistoryError(const std::string& msg) : Error(msg) {}
};

// A trajectory or state is inconsistent with the history it was paired with.
class InconsistentHistoryError : public Error {
 public:
  explicit InconsistentHistoryError(const std::string& msg) : Error(msg) {}
};

// A learned belief has no support for the queried history (and smoothing is
// disabled or impossible).
class NoSupportError : public Error {
 public:
  explicit NoSupportError(const std::string& msg) : Error(msg) {}
};

// Serialized artifacts that do not match: version tags, env hashes, players.
class ArtifactMismatchError : public Error {
 public:
  explicit ArtifactMismatchError(const std::string& msg) : Error(msg) {}
};

// Filesystem trouble.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

#define OBL_CHECK(cond, err_type, msg)                 \
  do {                                                 \
    if (!(cond)) throw ::obl::err_type((msg));         \
  } while (0)

}  // namespace obl

#endif  // OBL_ERR_H_
