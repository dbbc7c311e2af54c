// Copyright 2026 The qsc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qsc {

enum class ErrorCategory {
  Config,     // bad configuration or arguments
  Dimension,  // qubit index / state dimension mismatch
  Encoding,   // invalid encoder input
  Model,      // model/parameter inconsistency
  Metrics,    // invalid metric input
  Data,       // dataset / PCA problems
  Parse,      // malformed file contents
  Policy,     // invalid DD policy
  Internal,   // broken internal invariant
};

const char* to_string(ErrorCategory c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(std::string(to_string(category)) + ": " + message),
        category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

inline const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Config: return "config error";
    case ErrorCategory::Dimension: return "dimension error";
    case ErrorCategory::Encoding: return "encoding error";
    case ErrorCategory::Model: return "model error";
    case ErrorCategory::Metrics: return "metrics error";
    case ErrorCategory::Data: return "data error";
    case ErrorCategory::Parse: return "parse error";
    case ErrorCategory::Policy: return "policy error";
    case ErrorCategory::Internal: return "internal error";
  }
  return "error";
}

}  // namespace qsc
