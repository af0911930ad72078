// Copyright 2026 The risscma Authors
// SPDX-License-Identifier: Apache-2.0
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace risscma {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Inconsistent array dimensions between channel, phases and alphabet.
class DimensionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension_error"; }
};

/// A configuration or parameter violates a domain invariant.
/// `field()` names the offending parameter, `line()` is 1-based or 0 if unknown.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message, std::size_t line = 0,
              std::size_t column = 0)
      : Error(format(field, message, line, column)),
        field_(std::move(field)),
        line_(line),
        column_(column) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const char* kind() const noexcept override { return "config_error"; }

 private:
  static std::string format(const std::string& field, const std::string& message,
                            std::size_t line, std::size_t column) {
    std::string out;
    if (line > 0) {
      out += "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
    }
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  std::string field_;
  std::size_t line_;
  std::size_t column_;
};

/// Exhaustive search would exceed the configured evaluation budget.
class BudgetError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "budget_error"; }
};

/// Filesystem failure; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "io_error"; }
};

}  // namespace risscma
