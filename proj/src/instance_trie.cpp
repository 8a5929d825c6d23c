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

#include "exprindex/instance_trie.hpp"

#include <algorithm>
#include <functional>

namespace exprindex {
namespace {

Match match_from(ExprRef stored, const UnifyResult& r) {
  return Match{stored, r.mode, r.s1, r.s2, true};
}

std::string dot_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

InstanceTrie::InstanceTrie() : arena_(std::make_unique<Arena>()) {}

std::optional<InstanceTrie::Location> InstanceTrie::find_variant(
    ExprRef e, std::uint64_t* visits) const {
  Node* cur = const_cast<Node*>(&root_);
  while (true) {
    Node* next = nullptr;
    for (std::size_t i = 0; i < cur->children.size(); ++i) {
      Node* child = cur->children[i].get();
      auto order = compare_expressions(child->expr, e);
      // Variants compare equal and generalizations sort first.
      if (order > 0) break;
      if (visits) ++*visits;
      if (order == 0) return Location{cur, i};
      if (unify(child->expr, e).mode == Mode::kSG) {
        next = child;
        break;
      }
    }
    if (!next) return std::nullopt;
    cur = next;
  }
}

bool InstanceTrie::contains(ExprRef e) const {
  return find_variant(e, nullptr).has_value();
}

void InstanceTrie::place(Node* from, std::unique_ptr<Node> node) {
  Node* cur = from;
  while (true) {
    Node* next = nullptr;
    for (auto& child : cur->children) {
      if (compare_expressions(child->expr, node->expr) > 0) break;
      if (unify(child->expr, node->expr).mode == Mode::kSG) {
        next = child.get();
        break;
      }
    }
    if (!next) break;
    cur = next;
  }
  auto pos = std::lower_bound(
      cur->children.begin(), cur->children.end(), node->expr,
      [](const std::unique_ptr<Node>& c, ExprRef e) {
        return compare_expressions(c->expr, e) < 0;
      });
  cur->children.insert(pos, std::move(node));
}

void InstanceTrie::detach_instances(Node* at, ExprRef e,
                                    std::vector<std::unique_ptr<Node>>& out) {
  auto& children = at->children;
  for (std::size_t i = 0; i < children.size();) {
    Mode m = unify(children[i]->expr, e).mode;
    if (m == Mode::kSI) {
      out.push_back(std::move(children[i]));
      children.erase(children.begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    if (m == Mode::kSG || m == Mode::kOU) detach_instances(children[i].get(), e, out);
    ++i;
  }
}

void InstanceTrie::place_sorted(Node* from, std::vector<std::unique_ptr<Node>> subtrees) {
  std::vector<std::unique_ptr<Node>> nodes;
  std::function<void(std::unique_ptr<Node>)> flatten = [&](std::unique_ptr<Node> n) {
    auto kids = std::move(n->children);
    n->children.clear();
    nodes.push_back(std::move(n));
    for (auto& k : kids) flatten(std::move(k));
  };
  for (auto& s : subtrees) flatten(std::move(s));
  std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) {
    return compare_expressions(a->expr, b->expr) < 0;
  });
  for (auto& n : nodes) place(from, std::move(n));
}

InsertOutcome InstanceTrie::insert(ExprRef e) {
  if (find_variant(e, nullptr)) return InsertOutcome::kVariantPresent;
  auto node = std::make_unique<Node>();
  node->expr = materialize(e, Substitution{}, *arena_);
  // Every stored strict instance of e may have to move below it. They form
  // whole subtrees, and nothing else depends on where they sit.
  std::vector<std::unique_ptr<Node>> moved;
  detach_instances(&root_, node->expr, moved);
  place(&root_, std::move(node));
  place_sorted(&root_, std::move(moved));
  ++size_;
  return InsertOutcome::kInserted;
}

RemoveOutcome InstanceTrie::remove(ExprRef e) {
  auto loc = find_variant(e, nullptr);
  if (!loc) return RemoveOutcome::kNotFound;
  auto& siblings = loc->parent->children;
  std::unique_ptr<Node> gone = std::move(siblings[loc->index]);
  siblings.erase(siblings.begin() + static_cast<std::ptrdiff_t>(loc->index));
  place_sorted(loc->parent, std::move(gone->children));
  --size_;
  return RemoveOutcome::kRemoved;
}

void InstanceTrie::collect_generalizations(const Node& at, ExprRef q,
                                           RetrieveResult& out) const {
  for (const auto& child : at.children) {
    if (compare_expressions(child->expr, q) > 0) break;
    UnifyResult r = unify(child->expr, q);
    ++out.visits;
    if (r.mode == Mode::kVR) {
      out.matches.push_back(match_from(child->expr, r));
    } else if (r.mode == Mode::kSG) {
      out.matches.push_back(match_from(child->expr, r));
      collect_generalizations(*child, q, out);
    }
  }
}

void InstanceTrie::collect_instances(const Node& at, ExprRef q,
                                     RetrieveResult& out) const {
  std::function<void(const Node&)> wholesale = [&](const Node& n) {
    for (const auto& child : n.children) {
      out.matches.push_back(Match{child->expr, Mode::kSI, {}, {}, false});
      wholesale(*child);
    }
  };
  for (const auto& child : at.children) {
    UnifyResult r = unify(child->expr, q);
    ++out.visits;
    switch (r.mode) {
      case Mode::kVR:
      case Mode::kSI:
        out.matches.push_back(match_from(child->expr, r));
        wholesale(*child);
        break;
      case Mode::kSG:
      case Mode::kOU:
        collect_instances(*child, q, out);
        break;
      case Mode::kNU:
        break;
    }
  }
}

void InstanceTrie::collect_unifiable(const Node& at, ExprRef q,
                                     RetrieveResult& out) const {
  for (const auto& child : at.children) {
    UnifyResult r = unify(child->expr, q);
    ++out.visits;
    if (r.mode == Mode::kNU) continue;
    out.matches.push_back(match_from(child->expr, r));
    collect_unifiable(*child, q, out);
  }
}

RetrieveResult InstanceTrie::retrieve(ExprRef query, QueryMode mode) const {
  RetrieveResult out;
  auto arena = std::make_shared<Arena>();
  out.query = materialize(query, Substitution{}, *arena);
  out.query_arena = arena;
  ExprRef q = out.query;

  switch (mode) {
    case QueryMode::kVariant: {
      const Node* cur = &root_;
      while (cur) {
        const Node* next = nullptr;
        for (const auto& child : cur->children) {
          if (compare_expressions(child->expr, q) > 0) break;
          UnifyResult r = unify(child->expr, q);
          ++out.visits;
          if (r.mode == Mode::kVR) {
            out.matches.push_back(match_from(child->expr, r));
            break;
          }
          if (r.mode == Mode::kSG) {
            next = child.get();
            break;
          }
        }
        cur = next;
      }
      break;
    }
    case QueryMode::kInstance:
      collect_instances(root_, q, out);
      break;
    case QueryMode::kGeneralization:
      collect_generalizations(root_, q, out);
      break;
    case QueryMode::kUnifiable:
      collect_unifiable(root_, q, out);
      break;
  }
  last_visits_.store(out.visits, std::memory_order_relaxed);
  return out;
}

std::string InstanceTrie::dump(DumpFormat format) const {
  std::string out;
  if (format == DumpFormat::kText) {
    out = "(root)\n";
    std::function<void(const Node&, std::size_t)> walk = [&](const Node& n,
                                                             std::size_t depth) {
      for (const auto& child : n.children) {
        out.append(2 * depth, ' ');
        out += render(child->expr);
        out += '\n';
        walk(*child, depth + 1);
      }
    };
    walk(root_, 1);
    return out;
  }
  out = "digraph instance_trie {\n  n0 [label=\"(root)\"];\n";
  std::size_t next_id = 1;
  std::function<void(const Node&, std::size_t)> walk = [&](const Node& n,
                                                           std::size_t id) {
    for (const auto& child : n.children) {
      std::size_t child_id = next_id++;
      out += "  n" + std::to_string(child_id) + " [label=\"" +
             dot_escape(render(child->expr)) + "\"];\n";
      out += "  n" + std::to_string(id) + " -> n" + std::to_string(child_id) + ";\n";
      walk(*child, child_id);
    }
  };
  walk(root_, 0);
  out += "}\n";
  return out;
}

TrieStats InstanceTrie::stats() const {
  TrieStats s;
  s.size = size_;
  std::function<void(const Node&, std::size_t)> walk = [&](const Node& n, std::size_t d) {
    s.depth = std::max(s.depth, d);
    for (const auto& child : n.children) walk(*child, d + 1);
  };
  walk(root_, 0);
  s.node_visits_last_query = last_visits_.load(std::memory_order_relaxed);
  return s;
}

NodeView InstanceTrie::view() const {
  std::function<NodeView(const Node&, bool)> copy = [&](const Node& n, bool is_root) {
    NodeView v;
    if (!is_root) v.expr = n.expr;
    for (const auto& child : n.children) v.children.push_back(copy(*child, false));
    return v;
  };
  return copy(root_, true);
}

}  // namespace exprindex
