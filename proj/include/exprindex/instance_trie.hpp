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

// Instance tries.
//
// Every node but the root stores an expression; every child is a strict
// instance of its parent; siblings are ascending under compare_expressions
// and pairwise incomparable. The shape is a function of the stored set
// alone: it equals the trie obtained by inserting the set in ascending order,
// each expression descending into the first sibling that is more general.
// Generalizations sort before their strict instances, which is what makes
// that construction reparenting-free and lets insert/remove restore it
// locally.
//
// Single writer, many readers: retrieve() is const and may run concurrently
// with itself; insert() and remove() need exclusive access.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exprindex/expr.hpp"
#include "exprindex/query.hpp"
#include "exprindex/substitution.hpp"
#include "exprindex/unify.hpp"

namespace exprindex {

struct Match {
  ExprRef expr;
  // Relation of the stored expression to the query.
  Mode mode;
  Substitution s_stored;
  Substitution s_query;
  // False for instance-query answers reported as part of a subtree whose
  // root already is an instance of the query; those carry no substitutions.
  bool unified;
};

struct RetrieveResult {
  std::vector<Match> matches;
  // Nodes whose expression was unified against the query.
  std::uint64_t visits = 0;
  // Holds the fresh query copy the substitutions refer to.
  std::shared_ptr<const Arena> query_arena;
  ExprRef query;
};

enum class InsertOutcome : std::uint8_t { kInserted, kVariantPresent };
enum class RemoveOutcome : std::uint8_t { kRemoved, kNotFound };
enum class DumpFormat : std::uint8_t { kText, kDot };

struct TrieStats {
  std::size_t size = 0;
  std::size_t depth = 0;
  std::uint64_t node_visits_last_query = 0;
};

// Read-only copy of the tree shape, for inspection and tests.
struct NodeView {
  std::optional<ExprRef> expr;  // empty for the root
  std::vector<NodeView> children;
};

class InstanceTrie {
 public:
  InstanceTrie();
  InstanceTrie(const InstanceTrie&) = delete;
  InstanceTrie& operator=(const InstanceTrie&) = delete;

  InsertOutcome insert(ExprRef e);
  RemoveOutcome remove(ExprRef e);
  bool contains(ExprRef e) const;

  RetrieveResult retrieve(ExprRef query, QueryMode mode) const;

  std::string dump(DumpFormat format) const;
  TrieStats stats() const;
  std::size_t size() const { return size_; }
  NodeView view() const;

 private:
  struct Node {
    ExprRef expr;
    std::vector<std::unique_ptr<Node>> children;
  };

  // Parent and position of the node holding a variant of `e`.
  struct Location {
    Node* parent;
    std::size_t index;
  };

  std::optional<Location> find_variant(ExprRef e, std::uint64_t* visits) const;
  void place(Node* from, std::unique_ptr<Node> node);
  void detach_instances(Node* at, ExprRef e, std::vector<std::unique_ptr<Node>>& out);
  void place_sorted(Node* from, std::vector<std::unique_ptr<Node>> nodes);

  void collect_generalizations(const Node& at, ExprRef q, RetrieveResult& out) const;
  void collect_instances(const Node& at, ExprRef q, RetrieveResult& out) const;
  void collect_unifiable(const Node& at, ExprRef q, RetrieveResult& out) const;

  // TODO: cells of removed expressions stay in the arena; compact it once
  // the dead fraction passes a threshold.
  std::unique_ptr<Arena> arena_;
  Node root_;
  std::size_t size_ = 0;
  mutable std::atomic<std::uint64_t> last_visits_{0};
};

}  // namespace exprindex
