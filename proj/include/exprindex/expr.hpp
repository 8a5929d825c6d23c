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

// Flat prefix-notation encoding of first-order expressions.
//
// An expression such as f(a, X, g(b), Y, Y) is stored as the cell sequence
//
//   CONS f/5  CONS a/0  NOVAR nil  CONS g/1  CONS b/0  NOVAR nil  OFVAR 1
//
// The first occurrence of a variable is a NOVAR cell; its value is either
// nil or the index of the cell it has been destructively bound to. Every
// later occurrence is an OFVAR cell holding the distance back to that NOVAR.
// A variable is identified by the address of its NOVAR cell, so names are
// dropped at parse time and two encodings never share variables.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace exprindex {

// Interned constructor name. Ids are process-wide.
struct Symbol {
  std::uint32_t id = 0;

  friend bool operator==(Symbol, Symbol) = default;
};

Symbol intern(std::string_view name);
std::string_view symbol_name(Symbol s);

enum class CellTag : std::uint8_t { kCons, kNoVar, kOfVar };

std::string_view to_string(CellTag tag);

class Cell {
 public:
  static constexpr std::uint32_t kNil = 0xffffffffu;

  static constexpr Cell cons(Symbol symbol, std::uint32_t arity) {
    return Cell(CellTag::kCons, symbol.id, arity);
  }
  static constexpr Cell novar(std::uint32_t binding = kNil) {
    return Cell(CellTag::kNoVar, binding, 0);
  }
  static constexpr Cell ofvar(std::uint32_t back_offset) {
    return Cell(CellTag::kOfVar, back_offset, 0);
  }

  constexpr CellTag tag() const { return tag_; }
  constexpr bool is_cons() const { return tag_ == CellTag::kCons; }
  constexpr bool is_var() const { return tag_ != CellTag::kCons; }

  constexpr Symbol symbol() const { return Symbol{value_}; }
  // Zero for variable cells.
  constexpr std::uint32_t arity() const { return arity_; }
  // NOVAR only: kNil when unbound.
  constexpr std::uint32_t binding() const { return value_; }
  constexpr bool is_bound() const {
    return tag_ == CellTag::kNoVar && value_ != kNil;
  }
  // OFVAR only.
  constexpr std::uint32_t back_offset() const { return value_; }

  friend bool operator==(const Cell&, const Cell&) = default;

 private:
  constexpr Cell(CellTag tag, std::uint32_t value, std::uint32_t arity)
      : tag_(tag), value_(value), arity_(arity) {}

  CellTag tag_;
  std::uint32_t value_;
  std::uint32_t arity_;
};

// Append-only cell store. Indices are stable; only destructive substitution
// application rewrites an existing cell.
class Arena {
 public:
  Arena() = default;
  Arena(const Arena&) = delete;
  Arena& operator=(const Arena&) = delete;

  std::uint32_t size() const { return static_cast<std::uint32_t>(cells_.size()); }
  bool empty() const { return cells_.empty(); }
  const Cell& operator[](std::uint32_t index) const { return cells_[index]; }
  const Cell& at(std::uint32_t index) const;
  std::span<const Cell> cells() const { return cells_; }

  std::uint32_t push(Cell cell);
  std::uint32_t append(std::span<const Cell> cells);
  void reserve(std::size_t n) { cells_.reserve(n); }

  // Overwrites a cell in place. Only the destructive application path and
  // arena-local builders should call this.
  void overwrite(std::uint32_t index, Cell cell);

 private:
  std::vector<Cell> cells_;
};

struct CellRef {
  const Arena* arena = nullptr;
  std::uint32_t index = 0;

  const Cell& cell() const { return (*arena)[index]; }

  friend bool operator==(const CellRef&, const CellRef&) = default;
};

struct ExprRef {
  const Arena* arena = nullptr;
  std::uint32_t start = 0;

  CellRef root() const { return {arena, start}; }

  friend bool operator==(const ExprRef&, const ExprRef&) = default;
};

// Parses `text` and appends its encoding to `arena`. Throws ParseError.
ExprRef parse(std::string_view text, Arena& arena);

// Number of cells in the encoding, read with the remaining-cells counter.
// Throws CorruptionError if the counter does not reach zero inside the arena.
std::uint32_t span(ExprRef e);
std::uint32_t span(CellRef c);

// True when `c` lies inside the encoding of `e`.
bool contains(ExprRef e, std::uint32_t e_span, CellRef c);

CellTag cell_type(CellRef c);
std::uint32_t cell_arity(CellRef c);

struct ConsValue {
  Symbol symbol;
  std::uint32_t arity;
  friend bool operator==(const ConsValue&, const ConsValue&) = default;
};
struct NoVarValue {
  std::optional<std::uint32_t> binding;
  friend bool operator==(const NoVarValue&, const NoVarValue&) = default;
};
struct OfVarValue {
  std::uint32_t back_offset;
  friend bool operator==(const OfVarValue&, const OfVarValue&) = default;
};
using CellValue = std::variant<ConsValue, NoVarValue, OfVarValue>;

CellValue cell_value(CellRef c);

// The NOVAR cell an OFVAR refers to; any other cell is returned unchanged.
CellRef base_of(CellRef c);

// Appends a copy of `e` to `target` with every NOVAR unbound. Destructive
// bindings present in the source are not followed.
ExprRef copy_fresh(ExprRef e, Arena& target);

// True if any NOVAR inside `e` carries a destructive binding.
bool has_cell_bindings(ExprRef e);

// Key of one prefix cell under the total order on constructors. Variables
// are keyed by occurrence: a first occurrence sorts before every repeated
// occurrence, repeats sort by the first-occurrence rank of the variable they
// repeat, and any variable sorts before any constructor. Constructors sort
// by name bytes, then arity.
struct OrderKey {
  static constexpr std::uint32_t kFirstOccurrence = 0;

  static OrderKey first_occurrence() { return {true, kFirstOccurrence, {}, 0}; }
  static OrderKey repeat_of(std::uint32_t rank) { return {true, rank + 1, {}, 0}; }
  static OrderKey constructor(Symbol s, std::uint32_t arity) {
    return {false, 0, s, arity};
  }

  bool is_var;
  std::uint32_t var_key;
  Symbol symbol;
  std::uint32_t arity;
};

std::strong_ordering compare_constructors(const OrderKey& a, const OrderKey& b);

// Lexicographic order over prefix cell sequences. Equal exactly when the two
// expressions are variants of each other.
std::strong_ordering compare_expressions(ExprRef a, ExprRef b);

// Assigns canonical variable names V0, V1, ... in order of first request.
// Share one instance across renders that must agree on names.
class VarNaming {
 public:
  std::uint32_t index_of(CellRef base);
  // Names every variable of `e` in prefix order.
  void seed(ExprRef e);

 private:
  std::map<std::pair<const Arena*, std::uint32_t>, std::uint32_t> names_;
};

// Canonical text. Destructive in-cell bindings are rendered inline.
std::string render(ExprRef e);
std::string render(ExprRef e, VarNaming& names);

// Binding of an unbound-in-cell NOVAR base, if any. Used by renderers that
// resolve variables through an external substitution.
using BindingLookup = std::function<std::optional<CellRef>(CellRef base)>;

// Renders the subexpression starting at `start`. Variables are resolved first
// through their destructive in-cell binding, then through `lookup`; chains
// that loop throw CorruptionError.
std::string render_resolved(CellRef start, VarNaming& names,
                            const BindingLookup& lookup);

}  // namespace exprindex
