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

/*
 * C interface to the exprindex library.
 *
 * Every function that can fail returns an xi_status. On failure a message
 * for the calling thread is available from xi_last_error() until the next
 * failing call on that thread. Strings handed out through `char**` are owned
 * by the caller and released with xi_string_free().
 *
 * Handles are opaque. An xi_expr names an expression by arena and start cell
 * and stays valid as long as its arena does.
 */
#ifndef EXPRINDEX_EXPRINDEX_H_
#define EXPRINDEX_EXPRINDEX_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EXPRINDEX_BUILDING)
#    define XI_API __declspec(dllexport)
#  else
#    define XI_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define XI_API __attribute__((visibility("default")))
#else
#  define XI_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xi_status {
  XI_OK = 0,
  XI_ERR_INVALID_ARGUMENT = 1,
  XI_ERR_PARSE = 2,
  XI_ERR_IO = 3,
  XI_ERR_CONTRACT = 4,
  XI_ERR_CORRUPT = 5,
  XI_ERR_INTERNAL = 6
} xi_status;

typedef enum xi_cell_tag {
  XI_CELL_CONS = 0,
  XI_CELL_NOVAR = 1,
  XI_CELL_OFVAR = 2
} xi_cell_tag;

typedef enum xi_mode {
  XI_MODE_VR = 0,
  XI_MODE_SG = 1,
  XI_MODE_SI = 2,
  XI_MODE_OU = 3,
  XI_MODE_NU = 4
} xi_mode;

typedef enum xi_query_mode {
  XI_QUERY_VARIANT = 0,
  XI_QUERY_INSTANCE = 1,
  XI_QUERY_GENERALIZATION = 2,
  XI_QUERY_UNIFIABLE = 3
} xi_query_mode;

typedef enum xi_dump_format {
  XI_DUMP_TEXT = 0,
  XI_DUMP_DOT = 1
} xi_dump_format;

typedef struct xi_arena xi_arena;
typedef struct xi_unify_result xi_unify_result;
typedef struct xi_trie xi_trie;
typedef struct xi_matches xi_matches;
typedef struct xi_corpus xi_corpus;
typedef struct xi_baseline xi_baseline;

typedef struct xi_expr {
  const xi_arena* arena;
  uint32_t start;
} xi_expr;

typedef struct xi_cell_info {
  xi_cell_tag tag;
  const char* symbol;   /* CONS: interned name, valid for the process */
  uint32_t arity;       /* CONS */
  int bound;            /* NOVAR: nonzero once destructively bound */
  uint32_t binding;     /* NOVAR, bound: index of the target cell */
  uint32_t back_offset; /* OFVAR */
} xi_cell_info;

typedef struct xi_trie_stats {
  size_t size;
  size_t depth;
  uint64_t node_visits_last_query;
} xi_trie_stats;

typedef struct xi_shape {
  uint32_t max_depth;
  uint32_t max_arity;
  uint32_t symbols;
  uint32_t variables;
  uint32_t var_percent;
} xi_shape;

/* Errors and strings */
XI_API const char* xi_last_error(void);
XI_API size_t xi_last_error_line(void);   /* corpus parse errors, else 0 */
XI_API size_t xi_last_error_column(void); /* parse errors, 1-based, else 0 */
XI_API void xi_string_free(char* s);
XI_API const char* xi_mode_name(xi_mode mode);
XI_API const char* xi_cell_tag_name(xi_cell_tag tag);
XI_API xi_status xi_query_mode_parse(const char* text, xi_query_mode* out);

/* Arenas and expressions */
XI_API xi_status xi_arena_new(xi_arena** out);
XI_API void xi_arena_free(xi_arena* arena);
XI_API uint32_t xi_arena_size(const xi_arena* arena);
XI_API xi_status xi_parse(xi_arena* arena, const char* text, xi_expr* out);
XI_API xi_status xi_expr_span(xi_expr e, uint32_t* out);
XI_API xi_status xi_cell_get(const xi_arena* arena, uint32_t index, xi_cell_info* out);
XI_API xi_status xi_render(xi_expr e, char** out);
/* *out is negative, zero or positive. */
XI_API xi_status xi_compare(xi_expr a, xi_expr b, int* out);
XI_API xi_status xi_copy_fresh(xi_expr e, xi_arena* target, xi_expr* out);
XI_API xi_status xi_apply_destructive(xi_arena* arena, uint32_t var, uint32_t target);

/* Matching-unification */
XI_API xi_status xi_unify(xi_expr e1, xi_expr e2, xi_unify_result** out);
XI_API xi_mode xi_unify_result_mode(const xi_unify_result* r);
XI_API uint64_t xi_unify_result_occurs_checks(const xi_unify_result* r);
/* `{V0 -> a}` style renderings; variables are numbered over e1, then e2. */
XI_API xi_status xi_unify_result_bindings(const xi_unify_result* r, char** s1, char** s2);
XI_API void xi_unify_result_free(xi_unify_result* r);

/* Instance tries */
XI_API xi_status xi_trie_new(xi_trie** out);
XI_API void xi_trie_free(xi_trie* trie);
XI_API xi_status xi_trie_insert(xi_trie* trie, xi_expr e, int* inserted);
XI_API xi_status xi_trie_remove(xi_trie* trie, xi_expr e, int* removed);
XI_API size_t xi_trie_size(const xi_trie* trie);
XI_API xi_status xi_trie_stats_get(const xi_trie* trie, xi_trie_stats* out);
XI_API xi_status xi_trie_dump(const xi_trie* trie, xi_dump_format format, char** out);
XI_API xi_status xi_trie_retrieve(const xi_trie* trie, xi_expr query,
                                  xi_query_mode mode, xi_matches** out);

/* Retrieval results, shared by tries and the linear baseline */
XI_API size_t xi_matches_count(const xi_matches* m);
XI_API uint64_t xi_matches_visits(const xi_matches* m);
/* `rendering` is borrowed and lives as long as `m`. */
XI_API xi_status xi_matches_get(const xi_matches* m, size_t i, xi_mode* mode,
                                const char** rendering);
XI_API void xi_matches_free(xi_matches* m);

/* Corpus files */
XI_API xi_status xi_corpus_load(const char* path, xi_corpus** out);
XI_API xi_status xi_corpus_from_text(const char* text, xi_corpus** out);
XI_API size_t xi_corpus_size(const xi_corpus* corpus);
XI_API xi_status xi_corpus_get(const xi_corpus* corpus, size_t i, xi_expr* out,
                               size_t* line);
XI_API void xi_corpus_free(xi_corpus* corpus);

/* Linear-scan reference retrieval over a corpus (variants collapsed). */
XI_API xi_status xi_baseline_new(const xi_corpus* corpus, xi_baseline** out);
XI_API size_t xi_baseline_size(const xi_baseline* baseline);
XI_API xi_status xi_baseline_retrieve(const xi_baseline* baseline, xi_expr query,
                                      xi_query_mode mode, xi_matches** out);
XI_API void xi_baseline_free(xi_baseline* baseline);

/* Deterministic corpus generation: one expression per line. */
XI_API void xi_shape_default(xi_shape* out);
XI_API xi_status xi_generate(uint64_t seed, size_t size, const xi_shape* shape, char** out);

#ifdef __cplusplus
}
#endif

#endif /* EXPRINDEX_EXPRINDEX_H_ */
