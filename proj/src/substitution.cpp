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

#include "exprindex/substitution.hpp"

#include <algorithm>
#include <map>

#include "exprindex/error.hpp"

namespace exprindex {
namespace {

std::optional<CellRef> binding_of(CellRef base, const Substitution& s,
                                  const Substitution& other) {
  const Cell& cell = base.cell();
  if (cell.is_bound()) return CellRef{base.arena, cell.binding()};
  if (auto t = s.lookup(base)) return t;
  return other.lookup(base);
}

class Materializer {
 public:
  Materializer(const Substitution& s, const Substitution& other)
      : s_(s), other_(other) {}

  std::vector<Cell> run(CellRef start) {
    emit(start);
    return std::move(cells_);
  }

 private:
  std::uint32_t emit(CellRef c) {
    const Cell& cell = c.arena->at(c.index);
    if (cell.is_cons()) {
      cells_.push_back(Cell::cons(cell.symbol(), cell.arity()));
      std::uint32_t next = c.index + 1;
      for (std::uint32_t i = 0; i < cell.arity(); ++i) {
        next = emit(CellRef{c.arena, next});
      }
      return next;
    }
    CellRef base = base_of(c);
    if (auto target = binding_of(base, s_, other_)) {
      if (std::find(active_.begin(), active_.end(), base) != active_.end()) {
        throw CorruptionError("cyclic binding chain");
      }
      active_.push_back(base);
      emit(*target);
      active_.pop_back();
    } else {
      auto here = static_cast<std::uint32_t>(cells_.size());
      auto [it, first] = placed_.try_emplace(std::pair{base.arena, base.index}, here);
      cells_.push_back(first ? Cell::novar() : Cell::ofvar(here - it->second));
    }
    return c.index + 1;
  }

  const Substitution& s_;
  const Substitution& other_;
  std::vector<Cell> cells_;
  std::vector<CellRef> active_;
  std::map<std::pair<const Arena*, std::uint32_t>, std::uint32_t> placed_;
};

}  // namespace

std::optional<CellRef> Substitution::lookup(CellRef var) const {
  for (const Binding& b : bindings_) {
    if (b.var == var) return b.target;
  }
  return std::nullopt;
}

void Substitution::bind(CellRef var, CellRef target) {
  if (var.cell().tag() != CellTag::kNoVar) {
    throw ContractError("binding must name a base (NOVAR) variable cell");
  }
  if (binds(var)) throw ContractError("variable is already bound");
  bindings_.push_back(Binding{var, base_of(target)});
}

Resolved resolve(CellRef c, const Substitution& s, const Substitution& other) {
  if (c.arena->at(c.index).is_cons()) return {c, false};
  CellRef base = base_of(c);
  std::size_t steps = 0;
  std::vector<CellRef> seen;
  while (auto target = binding_of(base, s, other)) {
    if (target->cell().is_cons()) return {*target, false};
    base = base_of(*target);
    // Chains are short in practice; only start tracking once they are not.
    if (++steps > 16) {
      if (std::find(seen.begin(), seen.end(), base) != seen.end()) {
        throw CorruptionError("cyclic binding chain");
      }
      seen.push_back(base);
    }
  }
  return {base, true};
}

std::optional<CellRef> deref(CellRef c, const Substitution& s,
                             const Substitution& other) {
  Resolved r = resolve(c, s, other);
  if (r.is_var) return std::nullopt;
  return r.cell;
}

bool occurs_in(CellRef var, CellRef e, const Substitution& s1,
               const Substitution& s2) {
  std::vector<CellRef> pending{e};
  std::vector<CellRef> walked;
  while (!pending.empty()) {
    CellRef start = pending.back();
    pending.pop_back();
    std::uint64_t remaining = 1;
    for (std::uint32_t i = start.index; remaining > 0; ++i, --remaining) {
      CellRef c{start.arena, i};
      const Cell& cell = c.arena->at(i);
      if (cell.is_cons()) {
        remaining += cell.arity();
        continue;
      }
      Resolved r = resolve(c, s1, s2);
      if (r.is_var) {
        if (r.cell == var) return true;
      } else if (std::find(walked.begin(), walked.end(), r.cell) == walked.end()) {
        walked.push_back(r.cell);
        pending.push_back(r.cell);
      }
    }
  }
  return false;
}

ExprRef materialize(ExprRef e, const Substitution& s, const Substitution& other,
                    Arena& target) {
  std::vector<Cell> cells = Materializer(s, other).run(e.root());
  return ExprRef{&target, target.append(cells)};
}

ExprRef materialize(ExprRef e, const Substitution& s, Arena& target) {
  return materialize(e, s, Substitution{}, target);
}

void apply_destructive(Arena& arena, std::uint32_t var, std::uint32_t target) {
  const Cell& cell = arena.at(var);
  if (cell.tag() != CellTag::kNoVar) {
    throw ContractError("destructive application needs a NOVAR cell");
  }
  if (cell.is_bound()) throw ContractError("variable is already bound");
  if (target >= arena.size()) throw ContractError("target cell out of range");
  CellRef resolved = base_of(CellRef{&arena, target});
  if (resolved.index == var) throw ContractError("variable bound to itself");
  arena.overwrite(var, Cell::novar(resolved.index));
}

std::string render(ExprRef e, const Substitution& s, const Substitution& other,
                   VarNaming& names) {
  return render_resolved(e.root(), names, [&](CellRef base) {
    if (auto t = s.lookup(base)) return t;
    return other.lookup(base);
  });
}

std::string render(ExprRef e, const Substitution& s, const Substitution& other) {
  VarNaming names;
  return render(e, s, other, names);
}

std::string render_bindings(const Substitution& s, VarNaming& names) {
  std::string out = "{";
  bool first = true;
  for (const Binding& b : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += 'V';
    out += std::to_string(names.index_of(b.var));
    out += " -> ";
    out += render_resolved(b.target, names, nullptr);
  }
  out += '}';
  return out;
}

}  // namespace exprindex
