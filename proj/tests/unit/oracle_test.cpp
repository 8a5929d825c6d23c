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

#include <stdexcept>

#include "exprindex/oracle.hpp"
#include "random_trees.hpp"

namespace exprindex::oracle {
namespace {

Tree t(const char* text) { return parse_tree(text); }

TEST(OracleParse, RanksByFirstOccurrence) {
  Tree x = t("f(Y, g(X), Y)");
  EXPECT_EQ(x.args[0].var, 0);
  EXPECT_EQ(x.args[1].args[0].var, 1);
  EXPECT_EQ(x.args[2].var, 0);
  EXPECT_EQ(to_text(x), "f(V0, g(V1), V0)");
  EXPECT_THROW(parse_tree("f("), std::invalid_argument);
  EXPECT_THROW(parse_tree("f(a) b"), std::invalid_argument);
}

TEST(OracleUnify, Examples) {
  auto s = unify(t("f(V0, V0)"), shift_vars(t("f(a, a)"), 1));
  ASSERT_TRUE(s);
  EXPECT_EQ(to_text(oracle::apply(Tree::variable(0), *s)), "a");

  EXPECT_FALSE(unify(Tree::variable(0), Tree::app("f", {Tree::variable(0)})));

  // f(V0, V1) with f(V2, V2): all three variables collapse. Frozen after
  // the first run.
  Tree a = t("f(V0, V1)");
  Tree b = shift_vars(t("f(V0, V0)"), 2);
  auto mgu = unify(a, b);
  ASSERT_TRUE(mgu);
  EXPECT_EQ(to_text(oracle::apply(a, *mgu)), "f(V2, V2)");
  EXPECT_EQ(to_text(oracle::apply(b, *mgu)), "f(V2, V2)");
}

TEST(OracleClassify, Examples) {
  EXPECT_EQ(classify(t("f(V0, V1)"), t("f(V2, V3)")), Mode::kVR);
  EXPECT_EQ(classify(t("f(V0, V0)"), t("f(a, a)")), Mode::kSG);
  EXPECT_EQ(classify(t("f(a, a)"), t("f(V0, V0)")), Mode::kSI);
  EXPECT_EQ(classify(t("f(V0, V0)"), t("f(V1, a)")), Mode::kOU);
  EXPECT_EQ(classify(t("a"), t("b")), Mode::kNU);
  // Renaming apart: the same names on both sides mean nothing.
  EXPECT_EQ(classify(t("f(X)"), t("g(X)")), Mode::kNU);
  EXPECT_EQ(classify(t("f(X, a)"), t("f(b, X)")), Mode::kOU);
}

TEST(OracleMatch, OneSided) {
  EXPECT_TRUE(match(t("f(X, Y)"), t("f(a, a)")));
  EXPECT_FALSE(match(t("f(X, X)"), t("f(a, b)")));
  // Subject variables are constants.
  EXPECT_FALSE(match(t("f(a)"), t("f(X)")));
  EXPECT_TRUE(is_variant(t("f(X, Y)"), t("f(Y, X)")));
  EXPECT_FALSE(is_variant(t("f(X, Y)"), t("f(X, X)")));
}

TEST(OracleRetrieve, Basics) {
  std::vector<Tree> corpus;
  EXPECT_TRUE(retrieve(corpus, t("f(X)"), QueryMode::kUnifiable).empty());
  corpus = {t("f(X)"), t("f(a)"), t("g(a)"), t("X")};
  auto hits = retrieve(corpus, t("f(Y)"), QueryMode::kVariant);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].index, 0u);
  EXPECT_EQ(retrieve(corpus, t("f(Y)"), QueryMode::kInstance).size(), 2u);
  EXPECT_EQ(retrieve(corpus, t("f(a)"), QueryMode::kGeneralization).size(), 3u);
  EXPECT_EQ(retrieve(corpus, t("f(b)"), QueryMode::kUnifiable).size(), 2u);
}

// Exactly one of the five defining conditions holds.
TEST(OracleProperty, ClassificationIsExclusive) {
  testing::TreeGen gen(31, testing::TreeShape{});
  for (int i = 0; i < 3000; ++i) {
    auto [a, b0] = gen.pair();
    Tree b = shift_vars(b0, max_var(a) + 1);
    bool vr = is_variant(a, b);
    bool sg = !vr && match(a, b).has_value();
    bool si = !vr && match(b, a).has_value();
    bool ou = !vr && !sg && !si && unify(a, b).has_value();
    EXPECT_FALSE(sg && si);  // mutual matching means variant
    int fired = vr + sg + si + ou;
    Mode m = classify(a, b0);
    EXPECT_LE(fired, 1);
    EXPECT_EQ(fired == 0, m == Mode::kNU);
  }
}

TEST(OracleProperty, UnifierEqualizes) {
  testing::TreeGen gen(32, testing::TreeShape{});
  for (int i = 0; i < 3000; ++i) {
    auto [a, b0] = gen.pair();
    Tree b = shift_vars(b0, max_var(a) + 1);
    if (auto s = unify(a, b)) {
      EXPECT_EQ(oracle::apply(a, *s), oracle::apply(b, *s));
    }
  }
}

TEST(OracleProperty, BridgeRoundTrips) {
  testing::TreeGen gen(33, testing::TreeShape{});
  for (int i = 0; i < 10000; ++i) {
    Tree x = canonical(gen.tree());
    Arena arena;
    ExprRef e = cells_of_tree(x, arena);
    EXPECT_EQ(tree_of_cells(e), x);
    Arena again;
    ExprRef e2 = cells_of_tree(tree_of_cells(e), again);
    ASSERT_EQ(span(e), span(e2));
    for (std::uint32_t k = 0; k < span(e); ++k) EXPECT_EQ(arena[e.start + k], again[e2.start + k]);
  }
  Arena arena;
  EXPECT_EQ(tree_of_cells(parse("X", arena)), Tree::variable(0));
}

TEST(OracleBridge, MatchesLayout) {
  Arena arena;
  ExprRef e = cells_of_tree(t("f(a, V0, g(b), V1, V1)"), arena);
  Arena ref;
  ExprRef r = parse("f(a, X, g(b), Y, Y)", ref);
  ASSERT_EQ(span(e), span(r));
  for (std::uint32_t k = 0; k < span(e); ++k) EXPECT_EQ(arena[e.start + k], ref[r.start + k]);
}

}  // namespace
}  // namespace exprindex::oracle
