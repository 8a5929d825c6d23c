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

#include "exprindex/corpus.hpp"

#include <fstream>
#include <sstream>

namespace exprindex {

CorpusParseError::CorpusParseError(std::string source, std::size_t line,
                                   const ParseError& inner)
    : ParseError(Verbatim{}, inner.column(),
                 source + ":" + std::to_string(line) + ": " + inner.what()),
      line_(line) {}

Corpus Corpus::from_text(std::string_view text, std::string source) {
  Corpus corpus;
  corpus.source_ = std::move(source);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (line.find_first_not_of(" \t\r\f\v") == std::string_view::npos) continue;
    try {
      ExprRef e = parse(line, *corpus.arena_);
      corpus.entries_.push_back(CorpusEntry{e, line_no});
    } catch (const ParseError& err) {
      throw CorpusParseError(corpus.source_, line_no, err);
    }
  }
  return corpus;
}

Corpus Corpus::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return from_text(buffer.str(), path);
}

ExprGenerator::ExprGenerator(std::uint64_t seed, ShapeParams shape)
    : rng_(seed), shape_(shape) {
  if (shape_.symbols == 0) shape_.symbols = 1;
  static constexpr std::string_view kLetters = "abcdefghijklmnopqrstuvwxyz";
  for (unsigned i = 0; i < shape_.symbols; ++i) {
    names_.push_back(i < kLetters.size() ? std::string(1, kLetters[i])
                                         : "s" + std::to_string(i));
    arities_.push_back(i % (shape_.max_arity + 1));
    if (arities_.back() == 0) constants_.push_back(i);
  }
}

std::string ExprGenerator::next() {
  std::string out;
  write(out, 0);
  return out;
}

void ExprGenerator::write(std::string& out, unsigned depth) {
  bool leaf = depth >= shape_.max_depth;
  bool var = shape_.variables > 0 &&
             (leaf ? below(2) == 0 : below(100) < shape_.var_percent);
  if (var) {
    out += 'V';
    out += std::to_string(below(shape_.variables));
    return;
  }
  unsigned sym = leaf ? constants_[below(constants_.size())]
                      : static_cast<unsigned>(below(names_.size()));
  out += names_[sym];
  if (arities_[sym] == 0) return;
  out += '(';
  for (unsigned i = 0; i < arities_[sym]; ++i) {
    if (i > 0) out += ", ";
    write(out, depth + 1);
  }
  out += ')';
}

std::string generate_corpus(std::uint64_t seed, std::size_t size, ShapeParams shape) {
  ExprGenerator gen(seed, shape);
  std::string out;
  for (std::size_t i = 0; i < size; ++i) {
    out += gen.next();
    out += '\n';
  }
  return out;
}

}  // namespace exprindex
