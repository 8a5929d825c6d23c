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

#include <gtest/gtest.h>

#include <string>

#include "exprindex/error.hpp"
#include "exprindex/oracle.hpp"
#include "exprindex/unify.hpp"
#include "random_trees.hpp"

namespace exprindex {
namespace {

Mode mode_of(const char* a, const char* b) {
  Arena arena;
  return unify(parse(a, arena), parse(b, arena)).mode;
}

// Both substitutions applied to both sides must give the same expression.
void expect_unifier(const UnifyResult& r) {
  ASSERT_NE(r.mode, Mode::kNU);
  EXPECT_EQ(render(r.e1, r.s1, r.s2), render(r.e2, r.s2, r.s1));
}

TEST(Unify, WorkedExampleLayout) {
  // f(X, X) at cell 0 and f(a, a) at cell 5, two unrelated cells between.
  Arena arena;
  ExprRef e1 = parse("f(X, X)", arena);
  parse("z", arena);
  parse("z", arena);
  ExprRef e2 = parse("f(a, a)", arena);
  ASSERT_EQ(e2.start, 5u);

  Unifier u(e1, e2);
  u.step();
  EXPECT_EQ(u.remaining_left(), 2u);
  EXPECT_EQ(u.remaining_right(), 2u);
  EXPECT_EQ(u.cursor_left().index, 1u);
  EXPECT_EQ(u.cursor_right().index, 6u);
  EXPECT_EQ(u.mode(), Mode::kVR);
  u.step();
  EXPECT_EQ(u.mode(), Mode::kSG);
  ASSERT_EQ(u.s1().size(), 1u);
  EXPECT_EQ(u.s1().bindings()[0].var.index, 1u);
  EXPECT_EQ(u.s1().bindings()[0].target.index, 6u);
  EXPECT_EQ(u.remaining_left(), 1u);
  u.step();
  EXPECT_TRUE(u.done());
  EXPECT_EQ(u.mode(), Mode::kSG);
  EXPECT_EQ(u.s1().size(), 1u);
  EXPECT_TRUE(u.s2().empty());
  EXPECT_EQ(u.occurs_checks(), 0u);
  EXPECT_THROW(u.step(), ContractError);
}

TEST(Unify, ModesOfSmallPairs) {
  EXPECT_EQ(mode_of("f(X, Y)", "f(A, B)"), Mode::kVR);
  EXPECT_EQ(mode_of("f(X, X)", "f(a, a)"), Mode::kSG);
  EXPECT_EQ(mode_of("f(a, a)", "f(X, X)"), Mode::kSI);
  EXPECT_EQ(mode_of("f(X, X)", "f(Y, a)"), Mode::kOU);
  EXPECT_EQ(mode_of("a", "b"), Mode::kNU);
  EXPECT_EQ(mode_of("f(a)", "f(a, a)"), Mode::kNU);
  EXPECT_EQ(mode_of("X", "Y"), Mode::kVR);
  EXPECT_EQ(mode_of("f(X, Y)", "f(A, A)"), Mode::kSG);
  EXPECT_EQ(mode_of("f(A, A)", "f(X, Y)"), Mode::kSI);
  EXPECT_EQ(mode_of("f(X, a)", "f(b, Y)"), Mode::kOU);
  EXPECT_EQ(mode_of("f(X, Y, X)", "f(A, B, B)"), Mode::kOU);
}

TEST(Unify, OccursCheckInsideRecursion) {
  // X must equal both g(Z) and g(h(Z)): Z = h(Z) has no finite solution.
  EXPECT_EQ(mode_of("f(X, X)", "f(g(Z), g(h(Z)))"), Mode::kNU);
  EXPECT_EQ(mode_of("f(X, X)", "f(Y, g(Y))"), Mode::kNU);
  EXPECT_EQ(mode_of("f(X, g(X))", "f(Y, Y)"), Mode::kNU);
}

TEST(Unify, NoCopyForDisjointInputs) {
  Arena arena;
  ExprRef a = parse("f(X, X)", arena);
  ExprRef b = parse("f(a, Y)", arena);
  UnifyResult r = unify(a, b);
  EXPECT_EQ(r.scratch, nullptr);
  EXPECT_EQ(r.e1, a);
  expect_unifier(r);
}

TEST(Unify, SelfUnificationCopies) {
  Arena arena;
  ExprRef a = parse("f(X, g(X))", arena);
  UnifyResult r = unify(a, a);
  EXPECT_EQ(r.mode, Mode::kVR);
  EXPECT_NE(r.scratch, nullptr);
  EXPECT_THROW(Unifier(a, a), ContractError);
}

TEST(Unify, DestructiveBindingsAreSeen) {
  Arena arena;
  ExprRef e = parse("f(X, Y)", arena);
  ExprRef t = parse("a", arena);
  apply_destructive(arena, e.start + 1, t.start);
  Arena other;
  EXPECT_EQ(unify(e, parse("f(a, b)", other)).mode, Mode::kSG);
  EXPECT_EQ(unify(e, parse("f(b, b)", other)).mode, Mode::kNU);
}

TEST(ModeTransition, Table) {
  using E = ModeEvent;
  EXPECT_EQ(mode_transition(Mode::kVR, E::kBindLeftNonvar), Mode::kSG);
  EXPECT_EQ(mode_transition(Mode::kVR, E::kBindRightNonvar), Mode::kSI);
  EXPECT_EQ(mode_transition(Mode::kSG, E::kBindLeftNonvar), Mode::kSG);
  EXPECT_EQ(mode_transition(Mode::kSG, E::kBindRightNonvar), Mode::kOU);
  EXPECT_EQ(mode_transition(Mode::kSI, E::kBindVarVarNoninjectiveLeft), Mode::kOU);
  EXPECT_EQ(mode_transition(Mode::kSI, E::kBindVarVarBijective), Mode::kSI);
  EXPECT_EQ(mode_transition(Mode::kOU, E::kBindLeftNonvar), Mode::kOU);
  EXPECT_EQ(mode_transition(Mode::kOU, E::kConflict), Mode::kNU);
  EXPECT_EQ(mode_transition(Mode::kVR, E::kOccursFail), Mode::kNU);
  for (E e : {E::kBindLeftNonvar, E::kBindRightNonvar, E::kBindVarVarBijective,
              E::kBindVarVarNoninjectiveLeft, E::kBindVarVarNoninjectiveRight}) {
    EXPECT_EQ(mode_transition(Mode::kNU, e), Mode::kNU);
  }
}

TEST(ModeNames, RoundTrip) {
  for (Mode m : {Mode::kVR, Mode::kSG, Mode::kSI, Mode::kOU, Mode::kNU}) {
    EXPECT_EQ(mode_from_string(to_string(m)), m);
    EXPECT_EQ(mirror(mirror(m)), m);
  }
  EXPECT_FALSE(mode_from_string("XX").has_value());
}

// Properties over random pairs: agreement with the oracle, mirror symmetry,
// the result is a unifier, and the mode never moves back down.
TEST(UnifyProperty, AgreesWithOracleAndIsSymmetric) {
  testing::TreeGen gen(21, testing::TreeShape{});
  int counts[5] = {};
  for (int i = 0; i < 5000; ++i) {
    auto [ta, tb] = gen.pair();
    Arena arena;
    ExprRef a = testing::to_cells(ta, arena);
    ExprRef b = testing::to_cells(tb, arena);
    UnifyResult r = unify(a, b);
    std::string label = oracle::to_text(ta) + " vs " + oracle::to_text(tb);
    ASSERT_EQ(r.mode, oracle::classify(ta, tb)) << label;
    EXPECT_EQ(unify(b, a).mode, mirror(r.mode)) << label;
    if (r.mode != Mode::kNU) expect_unifier(r);
    ++counts[static_cast<int>(r.mode)];
  }
  for (int m = 0; m < 5; ++m) EXPECT_GT(counts[m], 100) << "mode " << m << " rarely generated";
}

TEST(UnifyProperty, ModeIsMonotoneAcrossSteps) {
  auto rank = [](Mode m) {
    switch (m) {
      case Mode::kVR:
        return 0;
      case Mode::kSG:
      case Mode::kSI:
        return 1;
      case Mode::kOU:
        return 2;
      case Mode::kNU:
        return 3;
    }
    return -1;
  };
  testing::TreeGen gen(22, testing::TreeShape{});
  for (int i = 0; i < 2000; ++i) {
    auto [ta, tb] = gen.pair();
    Arena arena;
    Unifier u(testing::to_cells(ta, arena), testing::to_cells(tb, arena));
    Mode prev = u.mode();
    while (!u.done()) {
      u.step();
      Mode now = u.mode();
      EXPECT_GE(rank(now), rank(prev));
      if (prev == Mode::kSG) {
        EXPECT_NE(now, Mode::kSI);
      }
      if (prev == Mode::kSI) {
        EXPECT_NE(now, Mode::kSG);
      }
      prev = now;
    }
  }
}

TEST(UnifyProperty, LinearPairsNeedNoOccursCheck) {
  testing::TreeShape shape;
  shape.linear = true;
  testing::TreeGen gen(23, shape);
  for (int i = 0; i < 3000; ++i) {
    auto [ta, tb] = gen.pair();
    ASSERT_TRUE(testing::is_linear(ta) && testing::is_linear(tb));
    Arena arena;
    UnifyResult r = unify(testing::to_cells(ta, arena), testing::to_cells(tb, arena));
    EXPECT_EQ(r.occurs_checks, 0u) << oracle::to_text(ta) << " vs " << oracle::to_text(tb);
  }
}

}  // namespace
}  // namespace exprindex
