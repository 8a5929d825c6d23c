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

#include "exprindex/unify.hpp"

#include <algorithm>

#include "exprindex/error.hpp"

namespace exprindex {
namespace {

bool overlaps(ExprRef a, std::uint32_t a_span, ExprRef b, std::uint32_t b_span) {
  if (a.arena != b.arena) return false;
  return a.start < b.start + b_span && b.start < a.start + a_span;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kVR:
      return "VR";
    case Mode::kSG:
      return "SG";
    case Mode::kSI:
      return "SI";
    case Mode::kOU:
      return "OU";
    case Mode::kNU:
      return "NU";
  }
  return "?";
}

std::optional<Mode> mode_from_string(std::string_view text) {
  for (Mode m : {Mode::kVR, Mode::kSG, Mode::kSI, Mode::kOU, Mode::kNU}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

Mode mirror(Mode mode) {
  if (mode == Mode::kSG) return Mode::kSI;
  if (mode == Mode::kSI) return Mode::kSG;
  return mode;
}

Mode mode_transition(Mode mode, ModeEvent event) {
  if (mode == Mode::kNU) return Mode::kNU;
  switch (event) {
    case ModeEvent::kConflict:
    case ModeEvent::kOccursFail:
      return Mode::kNU;
    case ModeEvent::kBindVarVarBijective:
      return mode;
    case ModeEvent::kBindLeftNonvar:
    case ModeEvent::kBindVarVarNoninjectiveLeft:
      if (mode == Mode::kVR) return Mode::kSG;
      if (mode == Mode::kSI) return Mode::kOU;
      return mode;
    case ModeEvent::kBindRightNonvar:
    case ModeEvent::kBindVarVarNoninjectiveRight:
      if (mode == Mode::kVR) return Mode::kSI;
      if (mode == Mode::kSG) return Mode::kOU;
      return mode;
  }
  return mode;
}

Unifier::Unifier(ExprRef e1, ExprRef e2)
    : e1_(e1), e2_(e2), span1_(span(e1)), span2_(span(e2)) {
  if (overlaps(e1, span1_, e2, span2_)) {
    throw ContractError("unify operands must not share cells");
  }
  top_.c1 = e1.root();
  top_.c2 = e2.root();
}

bool Unifier::done() const {
  return failed() || (top_.r1 == 0 && top_.r2 == 0);
}

void Unifier::step() {
  if (done()) throw ContractError("unification already finished");
  step_pair(top_, true);
}

UnifyResult Unifier::result() const {
  UnifyResult r;
  r.mode = mode_;
  r.s1 = s1_;
  r.s2 = s2_;
  r.e1 = e1_;
  r.e2 = e2_;
  r.occurs_checks = occurs_checks_;
  return r;
}

void Unifier::step_pair(Cursor& cur, bool top) {
  if (cur.r1 == 0 || cur.r2 == 0) throw CorruptionError("remaining-cell counter underflow");
  const Cell& a = cur.c1.cell();
  const Cell& b = cur.c2.cell();

  if (a.is_cons() && b.is_cons()) {
    if (a.symbol() != b.symbol() || a.arity() != b.arity()) {
      raise(ModeEvent::kConflict);
      return;
    }
    cur.r1 += a.arity();
    cur.r2 += b.arity();
    ++cur.c1.index;
    ++cur.c2.index;
    --cur.r1;
    --cur.r2;
    return;
  }

  unify_terms(classify(cur.c1, top), classify(cur.c2, top));
  if (failed()) return;
  // A constructor under the cursor has been consumed as a whole.
  cur.c1.index += a.is_cons() ? span(cur.c1) : 1;
  cur.c2.index += b.is_cons() ? span(cur.c2) : 1;
  --cur.r1;
  --cur.r2;
}

void Unifier::traverse(CellRef a, CellRef b) {
  Cursor cur{a, b, 1, 1};
  while (!failed() && (cur.r1 > 0 || cur.r2 > 0)) step_pair(cur, false);
}

Unifier::Term Unifier::classify(CellRef c, bool top) const {
  const Cell& cell = c.cell();
  if (cell.is_cons()) return {TermKind::kCons, c};
  // At top level a first occurrence has never been reached before: nothing
  // binds it and no binding target contains it.
  if (top && cell.tag() == CellTag::kNoVar) return {TermKind::kFresh, c};
  Resolved r = resolve(c, s1_, s2_);
  return {r.is_var ? TermKind::kVar : TermKind::kCons, r.cell};
}

void Unifier::unify_terms(const Term& t1, const Term& t2) {
  using K = TermKind;
  if (t1.kind == K::kCons && t2.kind == K::kCons) {
    if (t1.cell != t2.cell) traverse(t1.cell, t2.cell);
    return;
  }
  if (t1.kind == K::kFresh && t2.kind == K::kFresh) {
    bind_var(t2.cell, t1.cell);
    merge(t1.cell, t2.cell);
    return;
  }
  if (t1.kind == K::kFresh || t2.kind == K::kFresh) {
    const Term& fresh = t1.kind == K::kFresh ? t1 : t2;
    const Term& other = t1.kind == K::kFresh ? t2 : t1;
    bind_var(fresh.cell, other.cell);
    if (other.kind == K::kVar) {
      merge(other.cell, fresh.cell);
    } else {
      give_structure(fresh.cell, other.cell);
    }
    return;
  }
  if (t1.kind == K::kVar && t2.kind == K::kVar) {
    if (t1.cell == t2.cell) return;
    bind_var(t2.cell, t1.cell);
    merge(t1.cell, t2.cell);
    return;
  }
  const Term& var = t1.kind == K::kVar ? t1 : t2;
  const Term& cons = t1.kind == K::kVar ? t2 : t1;
  ++occurs_checks_;
  if (occurs_in(var.cell, cons.cell, s1_, s2_)) {
    raise(ModeEvent::kOccursFail);
    return;
  }
  bind_var(var.cell, cons.cell);
  give_structure(var.cell, cons.cell);
}

Unifier::Side Unifier::side_of(CellRef var) const {
  return contains(e1_, span1_, var) ? Side::kLeft : Side::kRight;
}

Unifier::ClassInfo& Unifier::class_of(CellRef rep) {
  auto it = std::find_if(classes_.begin(), classes_.end(),
                         [&](const ClassInfo& c) { return c.rep == rep; });
  if (it != classes_.end()) return *it;
  bool left = side_of(rep) == Side::kLeft;
  classes_.push_back(ClassInfo{rep, left ? 1u : 0u, left ? 0u : 1u});
  return classes_.back();
}

void Unifier::bind_var(CellRef var, CellRef target) {
  (side_of(var) == Side::kLeft ? s1_ : s2_).bind(var, target);
}

void Unifier::merge(CellRef keep, CellRef absorbed) {
  ClassInfo gone = class_of(absorbed);
  ClassInfo& kept = class_of(keep);
  kept.left += gone.left;
  kept.right += gone.right;
  bool collapse_left = kept.left >= 2;
  bool collapse_right = kept.right >= 2;
  if (collapse_left) raise(ModeEvent::kBindVarVarNoninjectiveLeft);
  if (collapse_right) raise(ModeEvent::kBindVarVarNoninjectiveRight);
  if (!collapse_left && !collapse_right) raise(ModeEvent::kBindVarVarBijective);
}

void Unifier::give_structure(CellRef rep, CellRef /*cons*/) {
  const ClassInfo& info = class_of(rep);
  if (info.left > 0) raise(ModeEvent::kBindLeftNonvar);
  if (info.right > 0) raise(ModeEvent::kBindRightNonvar);
}

void Unifier::raise(ModeEvent event) { mode_ = mode_transition(mode_, event); }

UnifyResult unify(ExprRef e1, ExprRef e2) {
  bool clash = overlaps(e1, span(e1), e2, span(e2));
  if (!clash && !has_cell_bindings(e1) && !has_cell_bindings(e2)) {
    Unifier u(e1, e2);
    u.run();
    return u.result();
  }
  auto scratch = std::make_shared<Arena>();
  ExprRef c1 = materialize(e1, Substitution{}, *scratch);
  ExprRef c2 = materialize(e2, Substitution{}, *scratch);
  Unifier u(c1, c2);
  u.run();
  UnifyResult r = u.result();
  r.scratch = std::move(scratch);
  return r;
}

}  // namespace exprindex
