// Copyright 2026 The exprindex Authors
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

namespace exprindex {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in expression text. `column` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t column, const std::string& message)
      : Error("column " + std::to_string(column) + ": " + message),
        column_(column) {}

  std::size_t column() const noexcept { return column_; }

 protected:
  // Takes the full message as is.
  struct Verbatim {};
  ParseError(Verbatim, std::size_t column, const std::string& what)
      : Error(what), column_(column) {}

 private:
  std::size_t column_;
};

// A documented precondition was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

// An arena holds an encoding that cannot be read back, or a binding chain
// loops. Either means a bug upstream.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

}  // namespace exprindex
