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

#include "exprindex/exprindex.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "exprindex/corpus.hpp"
#include "exprindex/error.hpp"
#include "exprindex/expr.hpp"
#include "exprindex/instance_trie.hpp"
#include "exprindex/oracle.hpp"
#include "exprindex/unify.hpp"

namespace xi = exprindex;

struct xi_arena {
  std::unique_ptr<xi::Arena> owned;
  xi::Arena* arena = nullptr;  // owned.get(), or a corpus arena
};

struct xi_unify_result {
  xi::UnifyResult result;
};

struct xi_trie {
  xi::InstanceTrie trie;
};

struct xi_matches {
  std::vector<std::pair<std::string, xi::Mode>> items;
  std::uint64_t visits = 0;
};

struct xi_corpus {
  xi::Corpus corpus;
  xi_arena view;
};

struct xi_baseline {
  std::vector<xi::oracle::Tree> trees;
  std::vector<std::string> renderings;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_error_line = 0;
thread_local std::size_t g_error_column = 0;

xi_status fail(xi_status status, const std::string& message, std::size_t line = 0,
               std::size_t column = 0) {
  g_error = message;
  g_error_line = line;
  g_error_column = column;
  return status;
}

template <typename F>
xi_status checked(F&& body) noexcept {
  try {
    body();
    return XI_OK;
  } catch (const xi::CorpusParseError& e) {
    return fail(XI_ERR_PARSE, e.what(), e.line(), e.column());
  } catch (const xi::ParseError& e) {
    return fail(XI_ERR_PARSE, e.what(), 0, e.column());
  } catch (const xi::IoError& e) {
    return fail(XI_ERR_IO, e.what());
  } catch (const xi::ContractError& e) {
    return fail(XI_ERR_CONTRACT, e.what());
  } catch (const xi::CorruptionError& e) {
    return fail(XI_ERR_CORRUPT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(XI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(XI_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(XI_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

xi::ExprRef to_ref(xi_expr e) {
  if (!e.arena || !e.arena->arena) throw xi::ContractError("null arena in expression handle");
  if (e.start >= e.arena->arena->size()) throw xi::ContractError("expression start out of range");
  return xi::ExprRef{e.arena->arena, e.start};
}

xi_mode to_c(xi::Mode m) { return static_cast<xi_mode>(static_cast<int>(m)); }

xi::QueryMode from_c(xi_query_mode m) {
  switch (m) {
    case XI_QUERY_VARIANT:
      return xi::QueryMode::kVariant;
    case XI_QUERY_INSTANCE:
      return xi::QueryMode::kInstance;
    case XI_QUERY_GENERALIZATION:
      return xi::QueryMode::kGeneralization;
    case XI_QUERY_UNIFIABLE:
      return xi::QueryMode::kUnifiable;
  }
  throw xi::ContractError("unknown query mode");
}

xi::ShapeParams to_shape(const xi_shape* s) {
  xi::ShapeParams p;
  if (s) {
    p.max_depth = s->max_depth;
    p.max_arity = s->max_arity;
    p.symbols = s->symbols;
    p.variables = s->variables;
    p.var_percent = s->var_percent;
  }
  return p;
}

#define XI_REQUIRE(cond)                                                 \
  do {                                                                   \
    if (!(cond)) return fail(XI_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* xi_last_error(void) { return g_error.c_str(); }
size_t xi_last_error_line(void) { return g_error_line; }
size_t xi_last_error_column(void) { return g_error_column; }
void xi_string_free(char* s) { std::free(s); }

const char* xi_mode_name(xi_mode mode) {
  switch (mode) {
    case XI_MODE_VR:
      return "VR";
    case XI_MODE_SG:
      return "SG";
    case XI_MODE_SI:
      return "SI";
    case XI_MODE_OU:
      return "OU";
    case XI_MODE_NU:
      return "NU";
  }
  return "?";
}

const char* xi_cell_tag_name(xi_cell_tag tag) {
  switch (tag) {
    case XI_CELL_CONS:
      return "CONS";
    case XI_CELL_NOVAR:
      return "NOVAR";
    case XI_CELL_OFVAR:
      return "OFVAR";
  }
  return "?";
}

xi_status xi_query_mode_parse(const char* text, xi_query_mode* out) {
  XI_REQUIRE(text && out);
  auto m = xi::query_mode_from_string(text);
  if (!m) return fail(XI_ERR_INVALID_ARGUMENT, std::string("unknown query mode: ") + text);
  *out = static_cast<xi_query_mode>(static_cast<int>(*m));
  return XI_OK;
}

xi_status xi_arena_new(xi_arena** out) {
  XI_REQUIRE(out);
  return checked([&] {
    auto a = std::make_unique<xi_arena>();
    a->owned = std::make_unique<xi::Arena>();
    a->arena = a->owned.get();
    *out = a.release();
  });
}

void xi_arena_free(xi_arena* arena) {
  if (arena && arena->owned) delete arena;
}

uint32_t xi_arena_size(const xi_arena* arena) {
  return arena && arena->arena ? arena->arena->size() : 0;
}

xi_status xi_parse(xi_arena* arena, const char* text, xi_expr* out) {
  XI_REQUIRE(arena && text && out);
  if (!arena->owned) return fail(XI_ERR_CONTRACT, "arena is read-only");
  return checked([&] {
    xi::ExprRef e = xi::parse(text, *arena->arena);
    *out = xi_expr{arena, e.start};
  });
}

xi_status xi_expr_span(xi_expr e, uint32_t* out) {
  XI_REQUIRE(out);
  return checked([&] { *out = xi::span(to_ref(e)); });
}

xi_status xi_cell_get(const xi_arena* arena, uint32_t index, xi_cell_info* out) {
  XI_REQUIRE(arena && out);
  return checked([&] {
    const xi::Cell& cell = arena->arena->at(index);
    xi_cell_info info{};
    switch (cell.tag()) {
      case xi::CellTag::kCons:
        info.tag = XI_CELL_CONS;
        info.symbol = xi::symbol_name(cell.symbol()).data();
        info.arity = cell.arity();
        break;
      case xi::CellTag::kNoVar:
        info.tag = XI_CELL_NOVAR;
        info.bound = cell.is_bound() ? 1 : 0;
        info.binding = cell.is_bound() ? cell.binding() : 0;
        break;
      case xi::CellTag::kOfVar:
        info.tag = XI_CELL_OFVAR;
        info.back_offset = cell.back_offset();
        break;
    }
    *out = info;
  });
}

xi_status xi_render(xi_expr e, char** out) {
  XI_REQUIRE(out);
  return checked([&] { *out = dup_string(xi::render(to_ref(e))); });
}

xi_status xi_compare(xi_expr a, xi_expr b, int* out) {
  XI_REQUIRE(out);
  return checked([&] {
    auto c = xi::compare_expressions(to_ref(a), to_ref(b));
    *out = c < 0 ? -1 : c > 0 ? 1 : 0;
  });
}

xi_status xi_copy_fresh(xi_expr e, xi_arena* target, xi_expr* out) {
  XI_REQUIRE(target && out);
  if (!target->owned) return fail(XI_ERR_CONTRACT, "arena is read-only");
  return checked([&] {
    xi::ExprRef c = xi::copy_fresh(to_ref(e), *target->arena);
    *out = xi_expr{target, c.start};
  });
}

xi_status xi_apply_destructive(xi_arena* arena, uint32_t var, uint32_t target) {
  XI_REQUIRE(arena);
  if (!arena->owned) return fail(XI_ERR_CONTRACT, "arena is read-only");
  return checked([&] { xi::apply_destructive(*arena->arena, var, target); });
}

xi_status xi_unify(xi_expr e1, xi_expr e2, xi_unify_result** out) {
  XI_REQUIRE(out);
  return checked([&] {
    auto r = std::make_unique<xi_unify_result>();
    r->result = xi::unify(to_ref(e1), to_ref(e2));
    *out = r.release();
  });
}

xi_mode xi_unify_result_mode(const xi_unify_result* r) {
  return r ? to_c(r->result.mode) : XI_MODE_NU;
}

uint64_t xi_unify_result_occurs_checks(const xi_unify_result* r) {
  return r ? r->result.occurs_checks : 0;
}

xi_status xi_unify_result_bindings(const xi_unify_result* r, char** s1, char** s2) {
  XI_REQUIRE(r && s1 && s2);
  return checked([&] {
    xi::VarNaming names;
    names.seed(r->result.e1);
    names.seed(r->result.e2);
    std::string a = xi::render_bindings(r->result.s1, names);
    std::string b = xi::render_bindings(r->result.s2, names);
    char* first = dup_string(a);
    try {
      *s2 = dup_string(b);
    } catch (...) {
      std::free(first);
      throw;
    }
    *s1 = first;
  });
}

void xi_unify_result_free(xi_unify_result* r) { delete r; }

xi_status xi_trie_new(xi_trie** out) {
  XI_REQUIRE(out);
  return checked([&] { *out = new xi_trie(); });
}

void xi_trie_free(xi_trie* trie) { delete trie; }

xi_status xi_trie_insert(xi_trie* trie, xi_expr e, int* inserted) {
  XI_REQUIRE(trie);
  return checked([&] {
    auto outcome = trie->trie.insert(to_ref(e));
    if (inserted) *inserted = outcome == xi::InsertOutcome::kInserted ? 1 : 0;
  });
}

xi_status xi_trie_remove(xi_trie* trie, xi_expr e, int* removed) {
  XI_REQUIRE(trie);
  return checked([&] {
    auto outcome = trie->trie.remove(to_ref(e));
    if (removed) *removed = outcome == xi::RemoveOutcome::kRemoved ? 1 : 0;
  });
}

size_t xi_trie_size(const xi_trie* trie) { return trie ? trie->trie.size() : 0; }

xi_status xi_trie_stats_get(const xi_trie* trie, xi_trie_stats* out) {
  XI_REQUIRE(trie && out);
  return checked([&] {
    xi::TrieStats s = trie->trie.stats();
    *out = xi_trie_stats{s.size, s.depth, s.node_visits_last_query};
  });
}

xi_status xi_trie_dump(const xi_trie* trie, xi_dump_format format, char** out) {
  XI_REQUIRE(trie && out);
  return checked([&] {
    auto f = format == XI_DUMP_DOT ? xi::DumpFormat::kDot : xi::DumpFormat::kText;
    *out = dup_string(trie->trie.dump(f));
  });
}

xi_status xi_trie_retrieve(const xi_trie* trie, xi_expr query, xi_query_mode mode,
                           xi_matches** out) {
  XI_REQUIRE(trie && out);
  return checked([&] {
    xi::RetrieveResult r = trie->trie.retrieve(to_ref(query), from_c(mode));
    auto m = std::make_unique<xi_matches>();
    m->visits = r.visits;
    m->items.reserve(r.matches.size());
    for (const xi::Match& hit : r.matches) {
      m->items.emplace_back(xi::render(hit.expr), hit.mode);
    }
    *out = m.release();
  });
}

size_t xi_matches_count(const xi_matches* m) { return m ? m->items.size() : 0; }

uint64_t xi_matches_visits(const xi_matches* m) { return m ? m->visits : 0; }

xi_status xi_matches_get(const xi_matches* m, size_t i, xi_mode* mode,
                         const char** rendering) {
  XI_REQUIRE(m);
  if (i >= m->items.size()) return fail(XI_ERR_INVALID_ARGUMENT, "match index out of range");
  if (mode) *mode = to_c(m->items[i].second);
  if (rendering) *rendering = m->items[i].first.c_str();
  return XI_OK;
}

void xi_matches_free(xi_matches* m) { delete m; }

xi_status xi_corpus_load(const char* path, xi_corpus** out) {
  XI_REQUIRE(path && out);
  return checked([&] {
    auto c = std::make_unique<xi_corpus>();
    c->corpus = xi::Corpus::from_file(path);
    c->view.arena = const_cast<xi::Arena*>(&c->corpus.arena());
    *out = c.release();
  });
}

xi_status xi_corpus_from_text(const char* text, xi_corpus** out) {
  XI_REQUIRE(text && out);
  return checked([&] {
    auto c = std::make_unique<xi_corpus>();
    c->corpus = xi::Corpus::from_text(text);
    c->view.arena = const_cast<xi::Arena*>(&c->corpus.arena());
    *out = c.release();
  });
}

size_t xi_corpus_size(const xi_corpus* corpus) { return corpus ? corpus->corpus.size() : 0; }

xi_status xi_corpus_get(const xi_corpus* corpus, size_t i, xi_expr* out, size_t* line) {
  XI_REQUIRE(corpus && out);
  if (i >= corpus->corpus.size()) return fail(XI_ERR_INVALID_ARGUMENT, "corpus index out of range");
  const xi::CorpusEntry& entry = corpus->corpus.entries()[i];
  *out = xi_expr{&corpus->view, entry.expr.start};
  if (line) *line = entry.line;
  return XI_OK;
}

void xi_corpus_free(xi_corpus* corpus) { delete corpus; }

xi_status xi_baseline_new(const xi_corpus* corpus, xi_baseline** out) {
  XI_REQUIRE(corpus && out);
  return checked([&] {
    auto b = std::make_unique<xi_baseline>();
    std::set<std::string> seen;
    for (const xi::CorpusEntry& entry : corpus->corpus.entries()) {
      xi::oracle::Tree t = xi::oracle::canonical(xi::oracle::tree_of_cells(entry.expr));
      std::string text = xi::oracle::to_text(t);
      if (!seen.insert(text).second) continue;
      b->trees.push_back(std::move(t));
      b->renderings.push_back(std::move(text));
    }
    *out = b.release();
  });
}

size_t xi_baseline_size(const xi_baseline* baseline) {
  return baseline ? baseline->trees.size() : 0;
}

xi_status xi_baseline_retrieve(const xi_baseline* baseline, xi_expr query,
                               xi_query_mode mode, xi_matches** out) {
  XI_REQUIRE(baseline && out);
  return checked([&] {
    xi::oracle::Tree q = xi::oracle::tree_of_cells(to_ref(query));
    auto hits = xi::oracle::retrieve(baseline->trees, q, from_c(mode));
    auto m = std::make_unique<xi_matches>();
    m->visits = baseline->trees.size();
    for (const auto& hit : hits) m->items.emplace_back(baseline->renderings[hit.index], hit.mode);
    *out = m.release();
  });
}

void xi_baseline_free(xi_baseline* baseline) { delete baseline; }

void xi_shape_default(xi_shape* out) {
  if (!out) return;
  xi::ShapeParams p;
  *out = xi_shape{p.max_depth, p.max_arity, p.symbols, p.variables, p.var_percent};
}

xi_status xi_generate(uint64_t seed, size_t size, const xi_shape* shape, char** out) {
  XI_REQUIRE(out);
  return checked([&] { *out = dup_string(xi::generate_corpus(seed, size, to_shape(shape))); });
}

}  // extern "C"
