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

#include "exprindex/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "exprindex/error.hpp"

namespace exprindex::oracle {
namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  Tree run() {
    Tree t = expr();
    skip();
    if (pos_ != text_.size()) throw std::invalid_argument("trailing input");
    return t;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string name() {
    std::size_t begin = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (begin == pos_) throw std::invalid_argument("expected a name");
    return std::string(text_.substr(begin, pos_ - begin));
  }

  Tree expr() {
    skip();
    if (pos_ == text_.size()) throw std::invalid_argument("unexpected end");
    char c = text_[pos_];
    std::string id = name();
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      auto it = std::find(vars_.begin(), vars_.end(), id);
      if (it == vars_.end()) {
        vars_.push_back(id);
        return Tree::variable(static_cast<int>(vars_.size() - 1));
      }
      return Tree::variable(static_cast<int>(it - vars_.begin()));
    }
    Tree t = Tree::app(id);
    skip();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      while (true) {
        t.args.push_back(expr());
        skip();
        if (pos_ == text_.size()) throw std::invalid_argument("unclosed '('");
        char d = text_[pos_++];
        if (d == ')') break;
        if (d != ',') throw std::invalid_argument("expected ',' or ')'");
      }
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> vars_;
};

void write(const Tree& t, std::string& out) {
  if (t.is_var()) {
    out += 'V';
    out += std::to_string(t.var);
    return;
  }
  out += t.symbol;
  if (t.args.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i > 0) out += ", ";
    write(t.args[i], out);
  }
  out += ')';
}

Tree renumber(const Tree& t, std::map<int, int>& ranks) {
  if (t.is_var()) {
    auto [it, fresh] = ranks.try_emplace(t.var, static_cast<int>(ranks.size()));
    return Tree::variable(it->second);
  }
  Tree out = Tree::app(t.symbol);
  out.args.reserve(t.args.size());
  for (const Tree& a : t.args) out.args.push_back(renumber(a, ranks));
  return out;
}

const Tree* walk(const Tree* t, const TreeSubst& s) {
  while (t->is_var()) {
    auto it = s.find(t->var);
    if (it == s.end()) break;
    t = &it->second;
  }
  return t;
}

bool occurs(int v, const Tree* t, const TreeSubst& s) {
  t = walk(t, s);
  if (t->is_var()) return t->var == v;
  return std::any_of(t->args.begin(), t->args.end(),
                     [&](const Tree& a) { return occurs(v, &a, s); });
}

bool robinson(const Tree* a, const Tree* b, TreeSubst& s) {
  a = walk(a, s);
  b = walk(b, s);
  if (a->is_var() && b->is_var() && a->var == b->var) return true;
  if (a->is_var()) {
    if (occurs(a->var, b, s)) return false;
    s.emplace(a->var, *b);
    return true;
  }
  if (b->is_var()) {
    if (occurs(b->var, a, s)) return false;
    s.emplace(b->var, *a);
    return true;
  }
  if (a->symbol != b->symbol || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    // Argument trees may be copied into `s` while we recurse, but `a` and
    // `b` point into the caller's trees or into map nodes, which are stable.
    if (!robinson(&a->args[i], &b->args[i], s)) return false;
  }
  return true;
}

bool match_into(const Tree& pattern, const Tree& subject, TreeSubst& s) {
  if (pattern.is_var()) {
    auto [it, fresh] = s.try_emplace(pattern.var, subject);
    return fresh || it->second == subject;
  }
  if (subject.is_var()) return false;
  if (pattern.symbol != subject.symbol || pattern.args.size() != subject.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!match_into(pattern.args[i], subject.args[i], s)) return false;
  }
  return true;
}

bool answer(QueryMode query, Mode mode) {
  switch (query) {
    case QueryMode::kVariant:
      return mode == Mode::kVR;
    case QueryMode::kInstance:
      return mode == Mode::kVR || mode == Mode::kSI;
    case QueryMode::kGeneralization:
      return mode == Mode::kVR || mode == Mode::kSG;
    case QueryMode::kUnifiable:
      return mode == Mode::kVR || mode == Mode::kSG || mode == Mode::kSI ||
             mode == Mode::kOU;
  }
  return false;
}

}  // namespace

Tree parse_tree(std::string_view text) { return TreeParser(text).run(); }

std::string to_text(const Tree& t) {
  std::string out;
  write(t, out);
  return out;
}

Tree canonical(const Tree& t) {
  std::map<int, int> ranks;
  return renumber(t, ranks);
}

int max_var(const Tree& t) {
  if (t.is_var()) return t.var;
  int m = -1;
  for (const Tree& a : t.args) m = std::max(m, max_var(a));
  return m;
}

Tree shift_vars(const Tree& t, int offset) {
  if (t.is_var()) return Tree::variable(t.var + offset);
  Tree out = Tree::app(t.symbol);
  for (const Tree& a : t.args) out.args.push_back(shift_vars(a, offset));
  return out;
}

std::optional<TreeSubst> unify(const Tree& a, const Tree& b) {
  TreeSubst s;
  if (!robinson(&a, &b, s)) return std::nullopt;
  return s;
}

Tree apply(const Tree& t, const TreeSubst& s) {
  const Tree* w = walk(&t, s);
  if (w->is_var()) return *w;
  Tree out = Tree::app(w->symbol);
  for (const Tree& a : w->args) out.args.push_back(apply(a, s));
  return out;
}

std::optional<TreeSubst> match(const Tree& pattern, const Tree& subject) {
  TreeSubst s;
  if (!match_into(pattern, subject, s)) return std::nullopt;
  return s;
}

bool is_variant(const Tree& a, const Tree& b) {
  auto s = match(a, b);
  if (!s) return false;
  std::vector<int> images;
  for (const auto& [var, image] : *s) {
    if (!image.is_var()) return false;
    images.push_back(image.var);
  }
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) == images.end();
}

Mode classify(const Tree& a, const Tree& b_in) {
  Tree b = shift_vars(b_in, max_var(a) + 1);
  if (is_variant(a, b)) return Mode::kVR;
  if (match(a, b)) return Mode::kSG;
  if (match(b, a)) return Mode::kSI;
  if (unify(a, b)) return Mode::kOU;
  return Mode::kNU;
}

std::vector<Hit> retrieve(std::span<const Tree> corpus, const Tree& query,
                          QueryMode mode) {
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    Mode m = classify(corpus[i], query);
    if (answer(mode, m)) hits.push_back(Hit{i, m});
  }
  return hits;
}

Tree tree_of_cells(ExprRef e) {
  const Arena& arena = *e.arena;
  std::map<std::uint32_t, int> ranks;
  std::uint32_t pos = e.start;
  // Recursive descent over the prefix sequence.
  auto read = [&](auto& self) -> Tree {
    if (pos >= arena.size()) throw CorruptionError("expression runs past arena end");
    const Cell cell = arena[pos];
    std::uint32_t here = pos++;
    switch (cell.tag()) {
      case CellTag::kCons: {
        Tree t = Tree::app(std::string(symbol_name(cell.symbol())));
        for (std::uint32_t i = 0; i < cell.arity(); ++i) t.args.push_back(self(self));
        return t;
      }
      case CellTag::kNoVar: {
        int rank = static_cast<int>(ranks.size());
        ranks.emplace(here, rank);
        return Tree::variable(rank);
      }
      case CellTag::kOfVar: {
        if (cell.back_offset() == 0 || cell.back_offset() > here - e.start) {
          throw CorruptionError("offset variable refers outside its expression");
        }
        auto it = ranks.find(here - cell.back_offset());
        if (it == ranks.end()) throw CorruptionError("offset variable without base");
        return Tree::variable(it->second);
      }
    }
    throw CorruptionError("bad cell tag");
  };
  return read(read);
}

ExprRef cells_of_tree(const Tree& t, Arena& arena) {
  std::vector<Cell> cells;
  std::map<int, std::uint32_t> first;
  auto emit = [&](auto& self, const Tree& node) -> void {
    auto here = static_cast<std::uint32_t>(cells.size());
    if (node.is_var()) {
      auto [it, fresh] = first.try_emplace(node.var, here);
      cells.push_back(fresh ? Cell::novar() : Cell::ofvar(here - it->second));
      return;
    }
    cells.push_back(Cell::cons(intern(node.symbol),
                               static_cast<std::uint32_t>(node.args.size())));
    for (const Tree& a : node.args) self(self, a);
  };
  emit(emit, t);
  return ExprRef{&arena, arena.append(cells)};
}

}  // namespace exprindex::oracle
