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

// Matching-unification: one left-to-right pass over two prefix encodings
// that computes a most general unifier and, at the same time, how the two
// expressions relate.
//
//   VR  variant            e1 and e2 are equal up to renaming
//   SG  strictly general   e1 matches e2, not a variant
//   SI  strict instance    e2 matches e1, not a variant
//   OU  only unifiable     both sides need non-renaming bindings
//   NU  non-unifiable
//
// The answer starts at VR and only moves up: VR -> {SG, SI} -> OU, with NU
// absorbing. Bindings for variables of e1 go to S1, those of e2 to S2.

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "exprindex/expr.hpp"
#include "exprindex/substitution.hpp"

namespace exprindex {

enum class Mode : std::uint8_t { kVR, kSG, kSI, kOU, kNU };

std::string_view to_string(Mode mode);
std::optional<Mode> mode_from_string(std::string_view text);

// SG <-> SI; the other modes are symmetric.
Mode mirror(Mode mode);

enum class ModeEvent : std::uint8_t {
  kBindLeftNonvar,   // a class holding a left variable received structure
  kBindRightNonvar,
  kBindVarVarBijective,
  kBindVarVarNoninjectiveLeft,   // two left variables collapsed
  kBindVarVarNoninjectiveRight,
  kConflict,
  kOccursFail,
};

Mode mode_transition(Mode mode, ModeEvent event);

struct UnifyResult {
  Mode mode = Mode::kVR;
  Substitution s1;
  Substitution s2;
  // The encodings s1/s2 refer to. These differ from the arguments only when
  // unify had to copy its inputs into `scratch`.
  ExprRef e1;
  ExprRef e2;
  std::uint64_t occurs_checks = 0;
  std::shared_ptr<const Arena> scratch;
};

// Step-wise form of the algorithm. Both inputs must be variable-disjoint
// (non-overlapping cell ranges) and free of destructive bindings; unify()
// takes care of that for arbitrary inputs.
class Unifier {
 public:
  Unifier(ExprRef e1, ExprRef e2);

  // True once both remaining-cell counters hit zero or the pair is NU.
  bool done() const;

  // Consumes one cell position on each side. A variable facing a
  // constructor consumes the whole subexpression on the constructor side.
  void step();

  void run() {
    while (!done()) step();
  }

  Mode mode() const { return mode_; }
  std::uint64_t remaining_left() const { return top_.r1; }
  std::uint64_t remaining_right() const { return top_.r2; }
  CellRef cursor_left() const { return top_.c1; }
  CellRef cursor_right() const { return top_.c2; }
  const Substitution& s1() const { return s1_; }
  const Substitution& s2() const { return s2_; }
  std::uint64_t occurs_checks() const { return occurs_checks_; }

  UnifyResult result() const;

 private:
  enum class Side : std::uint8_t { kLeft, kRight };

  struct Cursor {
    CellRef c1;
    CellRef c2;
    std::uint64_t r1 = 1;
    std::uint64_t r2 = 1;
  };

  enum class TermKind : std::uint8_t { kCons, kFresh, kVar };
  struct Term {
    TermKind kind;
    CellRef cell;  // constructor cell, or the base/representative variable
  };

  // Per representative variable: how many left and right variables its
  // class has absorbed.
  struct ClassInfo {
    CellRef rep;
    std::uint32_t left;
    std::uint32_t right;
  };

  void step_pair(Cursor& cur, bool top);
  void traverse(CellRef a, CellRef b);
  Term classify(CellRef c, bool top) const;
  void unify_terms(const Term& t1, const Term& t2);

  Side side_of(CellRef var) const;
  ClassInfo& class_of(CellRef rep);
  void bind_var(CellRef var, CellRef target);
  void merge(CellRef keep, CellRef absorbed);
  void give_structure(CellRef rep, CellRef cons);
  void raise(ModeEvent event);
  bool failed() const { return mode_ == Mode::kNU; }

  ExprRef e1_;
  ExprRef e2_;
  std::uint32_t span1_;
  std::uint32_t span2_;
  Cursor top_;
  Mode mode_ = Mode::kVR;
  Substitution s1_;
  Substitution s2_;
  std::vector<ClassInfo> classes_;
  std::uint64_t occurs_checks_ = 0;
};

// Classifies e1 against e2 and returns the unifier. Inputs may live anywhere,
// even overlap; arenas are never modified.
UnifyResult unify(ExprRef e1, ExprRef e2);

}  // namespace exprindex
