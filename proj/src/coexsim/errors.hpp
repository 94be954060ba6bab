// Copyright 2026 The coexsim Authors
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

#ifndef COEXSIM_ERRORS_HPP_
#define COEXSIM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace coexsim {

// Invalid configuration values (counts, radii, hyperparameters, specs).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called in a state that violates its contract.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what)
      : std::runtime_error(what) {}
};

// A referenced node id does not exist.
class LookupError : public std::runtime_error {
 public:
  explicit LookupError(const std::string& what) : std::runtime_error(what) {}
};

// Tensor/vector dimensions do not agree.
class ShapeError : public std::runtime_error {
 public:
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// An action or channel index is outside its valid range.
class RangeError : public std::runtime_error {
 public:
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

// Stepping a finished episode, loading before init, and similar misuse.
class StateError : public std::runtime_error {
 public:
  explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

// File read/write failures.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed config files, CSV files, or checkpoints.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coexsim

#endif  // COEXSIM_ERRORS_HPP_
