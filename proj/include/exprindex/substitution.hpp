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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exprindex/expr.hpp"

namespace exprindex {

// One elementary substitution {v -> e}: the address of v's NOVAR cell and the
// address of the first cell of e.
struct Binding {
  CellRef var;
  CellRef target;

  friend bool operator==(const Binding&, const Binding&) = default;
};

// An ordered list of bindings over distinct variable cells. Applying it never
// touches the cells it refers to; see apply_destructive for that.
class Substitution {
 public:
  Substitution() = default;

  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  std::span<const Binding> bindings() const { return bindings_; }

  std::optional<CellRef> lookup(CellRef var) const;
  bool binds(CellRef var) const { return lookup(var).has_value(); }

  // `var` must be an unbound NOVAR of this substitution. An OFVAR target is
  // stored as its base variable. Throws ContractError otherwise.
  void bind(CellRef var, CellRef target);

 private:
  std::vector<Binding> bindings_;
};

// Result of chasing a cell through its bindings: either a CONS cell or the
// unbound NOVAR at the end of the chain.
struct Resolved {
  CellRef cell;
  bool is_var;
};

// Follows OFVAR back-references, destructive in-cell bindings and the
// bindings of `s` and `other` until reaching a constructor or an unbound
// variable. Throws CorruptionError on a cyclic chain.
Resolved resolve(CellRef c, const Substitution& s,
                 const Substitution& other = Substitution{});

// Address resolution: the constructor cell a chain ends in, or nullopt when
// it ends in an unbound variable.
std::optional<CellRef> deref(CellRef c, const Substitution& s,
                             const Substitution& other = Substitution{});

// True iff the variable `var` is reachable from the expression starting at
// `e`, looking through the bindings of both substitutions.
bool occurs_in(CellRef var, CellRef e, const Substitution& s1,
               const Substitution& s2);

// Builds a fresh encoding of `e` in `target` with every bound variable
// replaced by its resolved value. Unbound variables keep their sharing.
ExprRef materialize(ExprRef e, const Substitution& s, const Substitution& other,
                    Arena& target);
ExprRef materialize(ExprRef e, const Substitution& s, Arena& target);

// Writes a reference to `target` into the NOVAR cell `var` of `arena`.
// OFVARs pointing at `var` keep their offsets. Throws ContractError when
// `var` is not an unbound NOVAR or `target` is out of range.
void apply_destructive(Arena& arena, std::uint32_t var, std::uint32_t target);

std::string render(ExprRef e, const Substitution& s,
                   const Substitution& other = Substitution{});
std::string render(ExprRef e, const Substitution& s, const Substitution& other,
                   VarNaming& names);

// `{V0 -> h(a, V1), ...}`. Targets are printed as stored, without applying
// the substitution to them.
std::string render_bindings(const Substitution& s, VarNaming& names);

}  // namespace exprindex
