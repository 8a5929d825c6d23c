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

// Reference implementations on plain trees. Nothing in here uses the cell
// encoding or the matching-unification machine except the two bridge
// functions, so agreement between the two is evidence rather than
// tautology. Speed is not a goal.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exprindex/expr.hpp"
#include "exprindex/query.hpp"
#include "exprindex/unify.hpp"

namespace exprindex::oracle {

struct Tree {
  // Variable rank, or -1 for an application.
  int var = -1;
  std::string symbol;
  std::vector<Tree> args;

  static Tree variable(int rank) { return Tree{rank, {}, {}}; }
  static Tree app(std::string symbol, std::vector<Tree> args = {}) {
    return Tree{-1, std::move(symbol), std::move(args)};
  }

  bool is_var() const { return var >= 0; }

  friend bool operator==(const Tree&, const Tree&) = default;
};

using TreeSubst = std::map<int, Tree>;

// Own parser for the textual syntax; variables are ranked by first
// occurrence. Throws std::invalid_argument on malformed text.
Tree parse_tree(std::string_view text);
std::string to_text(const Tree& t);

// Renumbers variables by first occurrence.
Tree canonical(const Tree& t);
int max_var(const Tree& t);
Tree shift_vars(const Tree& t, int offset);

// Textbook Robinson unification with an occurs check on every binding.
// Variables of `a` and `b` must be disjoint.
std::optional<TreeSubst> unify(const Tree& a, const Tree& b);

// Applies `s` until no bound variable remains.
Tree apply(const Tree& t, const TreeSubst& s);

// One-sided matching: a substitution s over vars(pattern) with
// pattern s == subject, variables of `subject` treated as constants.
std::optional<TreeSubst> match(const Tree& pattern, const Tree& subject);

bool is_variant(const Tree& a, const Tree& b);

// Mode of `a` relative to `b` from the definitions. `b` is renamed apart
// internally.
Mode classify(const Tree& a, const Tree& b);

struct Hit {
  std::size_t index;
  Mode mode;
};

// Linear scan over `corpus`, returning the entries whose mode relative to
// `query` is in the acceptance set of `mode`, in corpus order.
std::vector<Hit> retrieve(std::span<const Tree> corpus, const Tree& query,
                          QueryMode mode);

// Bridge to and from the cell encoding. Destructive bindings are ignored.
Tree tree_of_cells(ExprRef e);
ExprRef cells_of_tree(const Tree& t, Arena& arena);

}  // namespace exprindex::oracle
