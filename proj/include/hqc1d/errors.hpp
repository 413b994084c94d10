// Copyright 2026 The hqc1d Authors
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

namespace hqc1d {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gate targets out of range, repeated, or of the wrong arity.
class InvalidTarget : public Error {
 public:
  using Error::Error;
};

/// Dimension or qubit-count mismatch between two operands.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Unknown gate or identity name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A gate the selected machine cannot execute.
class UnsupportedGate : public Error {
 public:
  using Error::Error;
};

/// n, R, q or another size parameter outside its admissible range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Zero or several rules matched where exactly one was expected. Always an
/// implementation bug or a malformed configuration.
class RuleEngineError : public Error {
 public:
  using Error::Error;
};

/// Malformed circuit file or trace dump.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A measured pattern that is not one of the history configurations.
class NotAHistoryState : public Error {
 public:
  using Error::Error;
};

}  // namespace hqc1d
