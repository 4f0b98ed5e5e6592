// Copyright 2026 The incentive_forge Authors
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

#ifndef INCENTIVE_FORGE_CORE_ERRORS_HPP_
#define INCENTIVE_FORGE_CORE_ERRORS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace incentive_forge {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad shapes, indices or parameters supplied by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Singular systems, NaN/Inf iterates, divergence.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what,
                        std::optional<std::int64_t> step = std::nullopt)
      : Error(step ? what + " (step " + std::to_string(*step) + ")" : what),
        step_(step) {}

  std::optional<std::int64_t> step() const { return step_; }

 private:
  std::optional<std::int64_t> step_;
};

// Problems with an experiment configuration document.
class ConfigError : public Error {
 public:
  enum class Kind { kParse, kSchema, kInvariant };

  ConfigError(Kind kind, std::string path, const std::string& message)
      : Error(Prefix(kind) + (path.empty() ? "" : path + ": ") + message),
        kind_(kind),
        path_(std::move(path)) {}

  Kind kind() const { return kind_; }
  const std::string& path() const { return path_; }

 private:
  static std::string Prefix(Kind kind) {
    switch (kind) {
      case Kind::kParse:
        return "parse error: ";
      case Kind::kSchema:
        return "schema error: ";
      case Kind::kInvariant:
        return "invariant violation: ";
    }
    return "";
  }

  Kind kind_;
  std::string path_;
};

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_CORE_ERRORS_HPP_
