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

#include "exprindex/expr.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "exprindex/error.hpp"

namespace exprindex {
namespace {

class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  Symbol intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(name); it != ids_.end()) return Symbol{it->second};
    }
    std::unique_lock lock(mutex_);
    if (auto it = ids_.find(name); it != ids_.end()) return Symbol{it->second};
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.push_back(std::make_unique<std::string>(name));
    ids_.emplace(*names_.back(), id);
    return Symbol{id};
  }

  // The returned view stays valid for the life of the process.
  std::string_view name(Symbol s) const {
    std::shared_lock lock(mutex_);
    if (s.id >= names_.size()) throw ContractError("unknown symbol id");
    return *names_[s.id];
  }

 private:
  mutable std::shared_mutex mutex_;
  std::vector<std::unique_ptr<std::string>> names_;
  std::unordered_map<std::string_view, std::uint32_t> ids_;
};

bool is_var_start(char c) {
  return std::isupper(static_cast<unsigned char>(c)) || c == '_';
}
bool is_sym_start(char c) {
  return std::islower(static_cast<unsigned char>(c)) ||
         std::isdigit(static_cast<unsigned char>(c));
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Cell> run() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty input");
    expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return std::move(cells_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(pos_ + 1, message);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string_view ident() {
    std::size_t begin = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return text_.substr(begin, pos_ - begin);
  }

  void expr() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    auto here = static_cast<std::uint32_t>(cells_.size());
    if (is_var_start(c)) {
      auto name = ident();
      if (auto it = vars_.find(name); it != vars_.end()) {
        cells_.push_back(Cell::ofvar(here - it->second));
      } else {
        vars_.emplace(name, here);
        cells_.push_back(Cell::novar());
      }
      return;
    }
    if (!is_sym_start(c)) {
      fail(std::string("unexpected character '") + c + "'");
    }
    Symbol symbol = intern(ident());
    cells_.push_back(Cell::cons(symbol, 0));
    skip_ws();
    if (pos_ == text_.size() || text_[pos_] != '(') return;
    ++pos_;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ')') {
      fail("empty argument list; write a nullary constructor without parentheses");
    }
    std::uint32_t arity = 0;
    while (true) {
      expr();
      ++arity;
      skip_ws();
      if (pos_ == text_.size()) fail("expected ',' or ')'");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      fail("expected ',' or ')'");
    }
    cells_[here] = Cell::cons(symbol, arity);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<Cell> cells_;
  std::unordered_map<std::string_view, std::uint32_t> vars_;
};

// Walks prefix keys of one expression for compare_expressions.
class KeyReader {
 public:
  explicit KeyReader(ExprRef e) : arena_(*e.arena), pos_(e.start) {}

  bool done() const { return remaining_ == 0; }

  OrderKey next() {
    if (pos_ >= arena_.size()) throw CorruptionError("expression runs past arena end");
    const Cell& cell = arena_[pos_];
    OrderKey key = OrderKey::first_occurrence();
    switch (cell.tag()) {
      case CellTag::kCons:
        key = OrderKey::constructor(cell.symbol(), cell.arity());
        remaining_ += cell.arity();
        break;
      case CellTag::kNoVar:
        ranks_.emplace_back(pos_, static_cast<std::uint32_t>(ranks_.size()));
        break;
      case CellTag::kOfVar: {
        std::uint32_t base = base_of(CellRef{&arena_, pos_}).index;
        auto it = std::lower_bound(
            ranks_.begin(), ranks_.end(), base,
            [](const auto& entry, std::uint32_t idx) { return entry.first < idx; });
        if (it == ranks_.end() || it->first != base) {
          throw CorruptionError("offset variable refers outside its expression");
        }
        key = OrderKey::repeat_of(it->second);
        break;
      }
    }
    --remaining_;
    ++pos_;
    return key;
  }

 private:
  const Arena& arena_;
  std::uint32_t pos_;
  std::uint64_t remaining_ = 1;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ranks_;
};

std::uint32_t write_resolved(CellRef c, std::string& out, VarNaming& names,
                             const BindingLookup& lookup,
                             std::vector<CellRef>& active) {
  const Arena& arena = *c.arena;
  if (c.index >= arena.size()) throw CorruptionError("cell index past arena end");
  const Cell& cell = arena[c.index];
  if (cell.is_cons()) {
    out += symbol_name(cell.symbol());
    std::uint32_t next = c.index + 1;
    if (cell.arity() > 0) {
      out += '(';
      for (std::uint32_t i = 0; i < cell.arity(); ++i) {
        if (i > 0) out += ", ";
        next = write_resolved(CellRef{c.arena, next}, out, names, lookup, active);
      }
      out += ')';
    }
    return next;
  }
  CellRef base = base_of(c);
  std::optional<CellRef> target;
  if (base.cell().is_bound()) {
    target = CellRef{base.arena, base.cell().binding()};
  } else if (lookup) {
    target = lookup(base);
  }
  if (target) {
    if (std::find(active.begin(), active.end(), base) != active.end()) {
      throw CorruptionError("cyclic binding chain");
    }
    active.push_back(base);
    write_resolved(*target, out, names, lookup, active);
    active.pop_back();
  } else {
    out += 'V';
    out += std::to_string(names.index_of(base));
  }
  return c.index + 1;
}

}  // namespace

Symbol intern(std::string_view name) {
  if (name.empty()) throw ContractError("symbol name must not be empty");
  return SymbolTable::instance().intern(name);
}

std::string_view symbol_name(Symbol s) { return SymbolTable::instance().name(s); }

std::string_view to_string(CellTag tag) {
  switch (tag) {
    case CellTag::kCons:
      return "CONS";
    case CellTag::kNoVar:
      return "NOVAR";
    case CellTag::kOfVar:
      return "OFVAR";
  }
  return "?";
}

const Cell& Arena::at(std::uint32_t index) const {
  if (index >= cells_.size()) throw ContractError("cell index out of range");
  return cells_[index];
}

std::uint32_t Arena::push(Cell cell) {
  cells_.push_back(cell);
  return static_cast<std::uint32_t>(cells_.size() - 1);
}

std::uint32_t Arena::append(std::span<const Cell> cells) {
  auto start = static_cast<std::uint32_t>(cells_.size());
  cells_.insert(cells_.end(), cells.begin(), cells.end());
  return start;
}

void Arena::overwrite(std::uint32_t index, Cell cell) {
  if (index >= cells_.size()) throw ContractError("cell index out of range");
  cells_[index] = cell;
}

ExprRef parse(std::string_view text, Arena& arena) {
  std::vector<Cell> cells = Parser(text).run();
  return ExprRef{&arena, arena.append(cells)};
}

std::uint32_t span(CellRef c) {
  const Arena& arena = *c.arena;
  std::uint64_t remaining = 1;
  std::uint32_t i = c.index;
  while (remaining > 0) {
    if (i >= arena.size()) throw CorruptionError("expression runs past arena end");
    remaining += arena[i].arity();
    --remaining;
    ++i;
  }
  return i - c.index;
}

std::uint32_t span(ExprRef e) { return span(e.root()); }

bool contains(ExprRef e, std::uint32_t e_span, CellRef c) {
  return c.arena == e.arena && c.index >= e.start && c.index - e.start < e_span;
}

CellTag cell_type(CellRef c) { return c.arena->at(c.index).tag(); }

std::uint32_t cell_arity(CellRef c) { return c.arena->at(c.index).arity(); }

CellValue cell_value(CellRef c) {
  const Cell& cell = c.arena->at(c.index);
  switch (cell.tag()) {
    case CellTag::kCons:
      return ConsValue{cell.symbol(), cell.arity()};
    case CellTag::kNoVar:
      if (cell.is_bound()) return NoVarValue{cell.binding()};
      return NoVarValue{};
    case CellTag::kOfVar:
      return OfVarValue{cell.back_offset()};
  }
  throw CorruptionError("bad cell tag");
}

CellRef base_of(CellRef c) {
  const Cell& cell = c.arena->at(c.index);
  if (cell.tag() != CellTag::kOfVar) return c;
  std::uint32_t back = cell.back_offset();
  if (back == 0 || back > c.index) throw CorruptionError("offset variable out of range");
  CellRef base{c.arena, c.index - back};
  if (base.cell().tag() != CellTag::kNoVar) {
    throw CorruptionError("offset variable does not refer to a base variable");
  }
  return base;
}

ExprRef copy_fresh(ExprRef e, Arena& target) {
  std::uint32_t n = span(e);
  std::vector<Cell> cells(e.arena->cells().begin() + e.start,
                          e.arena->cells().begin() + e.start + n);
  for (Cell& cell : cells) {
    if (cell.tag() == CellTag::kNoVar) cell = Cell::novar();
  }
  return ExprRef{&target, target.append(cells)};
}

bool has_cell_bindings(ExprRef e) {
  std::uint32_t n = span(e);
  auto cells = e.arena->cells().subspan(e.start, n);
  return std::any_of(cells.begin(), cells.end(),
                     [](const Cell& c) { return c.is_bound(); });
}

std::strong_ordering compare_constructors(const OrderKey& a, const OrderKey& b) {
  if (a.is_var != b.is_var) {
    return a.is_var ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_var) return a.var_key <=> b.var_key;
  if (a.symbol == b.symbol) return a.arity <=> b.arity;
  if (auto c = symbol_name(a.symbol) <=> symbol_name(b.symbol); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.arity <=> b.arity;
}

std::strong_ordering compare_expressions(ExprRef a, ExprRef b) {
  KeyReader ra(a);
  KeyReader rb(b);
  while (!ra.done() && !rb.done()) {
    OrderKey ka = ra.next();
    OrderKey kb = rb.next();
    if (auto c = compare_constructors(ka, kb); c != 0) return c;
  }
  // Equal key prefixes imply equal counters, so both end together.
  return ra.done() == rb.done() ? std::strong_ordering::equal
         : ra.done()            ? std::strong_ordering::less
                                : std::strong_ordering::greater;
}

std::uint32_t VarNaming::index_of(CellRef base) {
  auto [it, inserted] = names_.try_emplace(
      std::pair{base.arena, base.index}, static_cast<std::uint32_t>(names_.size()));
  return it->second;
}

void VarNaming::seed(ExprRef e) {
  std::uint32_t n = span(e);
  for (std::uint32_t i = 0; i < n; ++i) {
    CellRef c{e.arena, e.start + i};
    if (c.cell().is_var()) index_of(base_of(c));
  }
}

std::string render_resolved(CellRef start, VarNaming& names,
                            const BindingLookup& lookup) {
  std::string out;
  std::vector<CellRef> active;
  write_resolved(start, out, names, lookup, active);
  return out;
}

std::string render(ExprRef e, VarNaming& names) {
  return render_resolved(e.root(), names, nullptr);
}

std::string render(ExprRef e) {
  VarNaming names;
  return render(e, names);
}

}  // namespace exprindex
