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

// Corpus files: UTF-8, one expression per line, `#` starts a comment that
// runs to the end of the line, blank lines are ignored.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "exprindex/error.hpp"
#include "exprindex/expr.hpp"

namespace exprindex {

class IoError : public Error {
 public:
  using Error::Error;
};

// A ParseError located in a corpus file.
class CorpusParseError : public ParseError {
 public:
  CorpusParseError(std::string source, std::size_t line, const ParseError& inner);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct CorpusEntry {
  ExprRef expr;
  std::size_t line;
};

class Corpus {
 public:
  Corpus() : arena_(std::make_unique<Arena>()) {}

  static Corpus from_text(std::string_view text, std::string source = "<text>");
  static Corpus from_file(const std::string& path);

  const std::vector<CorpusEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const Arena& arena() const { return *arena_; }
  const std::string& source() const { return source_; }

 private:
  std::unique_ptr<Arena> arena_;
  std::vector<CorpusEntry> entries_;
  std::string source_;
};

struct ShapeParams {
  unsigned max_depth = 4;
  unsigned max_arity = 3;
  unsigned symbols = 8;
  unsigned variables = 5;
  // Chance, in percent, that a non-leaf position holds a variable.
  unsigned var_percent = 25;
};

// Deterministic random expressions. Symbol i has arity i mod (max_arity+1);
// the output for a given seed and shape is identical on every platform.
class ExprGenerator {
 public:
  ExprGenerator(std::uint64_t seed, ShapeParams shape);

  std::string next();

 private:
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  void write(std::string& out, unsigned depth);

  std::mt19937_64 rng_;
  ShapeParams shape_;
  std::vector<std::string> names_;
  std::vector<unsigned> arities_;
  std::vector<unsigned> constants_;
};

std::string generate_corpus(std::uint64_t seed, std::size_t size, ShapeParams shape);

}  // namespace exprindex
