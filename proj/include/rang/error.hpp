// Copyright 2026 The RANG Authors
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
#include <utility>
#include <vector>

namespace rang {

// Error categories map one-to-one onto CLI exit codes: kIo and kConfig exit
// with 1, kValidation with 2.
enum class ErrorKind { kIo, kFormat, kConfig, kValidation, kInternal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error IoError(const std::string& message) {
  return Error(ErrorKind::kIo, message);
}

inline Error FormatError(const std::string& file, int line,
                         const std::string& message) {
  return Error(ErrorKind::kFormat,
               file + ":" + std::to_string(line) + ": " + message);
}

inline Error ConfigError(const std::string& message) {
  return Error(ErrorKind::kConfig, message);
}

// A single broken invariant. `rule` is a stable short tag usable in scripts.
struct Violation {
  std::string rule;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(ErrorKind::kValidation, Summarize(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string Summarize(const std::vector<Violation>& violations) {
    std::string out = std::to_string(violations.size()) + " violation(s)";
    for (const Violation& v : violations) {
      out += "\n  [" + v.rule + "] " + v.detail;
    }
    return out;
  }

  std::vector<Violation> violations_;
};

}  // namespace rang
