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

// exprindex: command-line front end over the C API.
//
// Exit codes: 0 success, 1 I/O, 2 parse (including bad usage), 3 trie and
// linear baseline disagree.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "exprindex/exprindex.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitParse = 2;
constexpr int kExitMismatch = 3;

// Any failing C call ends the command with the exit code for its status.
struct Failure {
  int code;
};

int exit_code_for(xi_status s) {
  switch (s) {
    case XI_ERR_IO:
      return kExitIo;
    case XI_ERR_PARSE:
    case XI_ERR_INVALID_ARGUMENT:
      return kExitParse;
    default:
      return kExitIo;
  }
}

void check(xi_status s) {
  if (s == XI_OK) return;
  std::cerr << "exprindex: " << xi_last_error() << "\n";
  throw Failure{exit_code_for(s)};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using ArenaPtr = std::unique_ptr<xi_arena, Deleter<xi_arena, xi_arena_free>>;
using TriePtr = std::unique_ptr<xi_trie, Deleter<xi_trie, xi_trie_free>>;
using MatchesPtr = std::unique_ptr<xi_matches, Deleter<xi_matches, xi_matches_free>>;
using CorpusPtr = std::unique_ptr<xi_corpus, Deleter<xi_corpus, xi_corpus_free>>;
using BaselinePtr = std::unique_ptr<xi_baseline, Deleter<xi_baseline, xi_baseline_free>>;
using UnifyPtr =
    std::unique_ptr<xi_unify_result, Deleter<xi_unify_result, xi_unify_result_free>>;

std::string take(char* s) {
  std::string out(s ? s : "");
  xi_string_free(s);
  return out;
}

ArenaPtr new_arena() {
  xi_arena* a = nullptr;
  check(xi_arena_new(&a));
  return ArenaPtr(a);
}

CorpusPtr load_corpus(const std::string& path) {
  xi_corpus* c = nullptr;
  check(xi_corpus_load(path.c_str(), &c));
  return CorpusPtr(c);
}

TriePtr build_trie(const xi_corpus* corpus) {
  xi_trie* t = nullptr;
  check(xi_trie_new(&t));
  TriePtr trie(t);
  for (size_t i = 0; i < xi_corpus_size(corpus); ++i) {
    xi_expr e;
    check(xi_corpus_get(corpus, i, &e, nullptr));
    check(xi_trie_insert(trie.get(), e, nullptr));
  }
  return trie;
}

using Lines = std::vector<std::pair<std::string, xi_mode>>;

Lines lines_of(const xi_matches* m) {
  Lines out;
  for (size_t i = 0; i < xi_matches_count(m); ++i) {
    xi_mode mode;
    const char* text = nullptr;
    check(xi_matches_get(m, i, &mode, &text));
    out.emplace_back(text, mode);
  }
  std::sort(out.begin(), out.end());
  return out;
}

xi_query_mode parse_mode(const std::string& text) {
  xi_query_mode m;
  check(xi_query_mode_parse(text.c_str(), &m));
  return m;
}

// --- parse ------------------------------------------------------------------

int cmd_parse(const std::string& text) {
  auto arena = new_arena();
  xi_expr e;
  check(xi_parse(arena.get(), text.c_str(), &e));
  uint32_t n = 0;
  check(xi_expr_span(e, &n));
  for (uint32_t i = 0; i < n; ++i) {
    xi_cell_info info;
    check(xi_cell_get(arena.get(), e.start + i, &info));
    std::string payload;
    switch (info.tag) {
      case XI_CELL_CONS:
        payload = std::string(info.symbol) + "/" + std::to_string(info.arity);
        break;
      case XI_CELL_NOVAR:
        payload = info.bound ? std::to_string(info.binding) : "nil";
        break;
      case XI_CELL_OFVAR:
        payload = std::to_string(info.back_offset);
        break;
    }
    std::printf("%-4u %-6s %s\n", i, xi_cell_tag_name(info.tag), payload.c_str());
  }
  char* rendered = nullptr;
  check(xi_render(e, &rendered));
  std::printf("%s\n", take(rendered).c_str());
  return kExitOk;
}

// --- unify ------------------------------------------------------------------

int cmd_unify(const std::string& a, const std::string& b) {
  auto arena = new_arena();
  xi_expr e1, e2;
  check(xi_parse(arena.get(), a.c_str(), &e1));
  check(xi_parse(arena.get(), b.c_str(), &e2));
  xi_unify_result* raw = nullptr;
  check(xi_unify(e1, e2, &raw));
  UnifyPtr r(raw);
  char* s1 = nullptr;
  char* s2 = nullptr;
  check(xi_unify_result_bindings(r.get(), &s1, &s2));
  std::printf("mode=%s\nS1=%s\nS2=%s\n", xi_mode_name(xi_unify_result_mode(r.get())),
              take(s1).c_str(), take(s2).c_str());
  return kExitOk;
}

// --- query ------------------------------------------------------------------

int cmd_query(const std::string& corpus_path, const std::string& mode_text,
              const std::string& query_text, const std::string& baseline) {
  xi_query_mode mode = parse_mode(mode_text);
  auto corpus = load_corpus(corpus_path);
  auto arena = new_arena();
  xi_expr q;
  check(xi_parse(arena.get(), query_text.c_str(), &q));

  xi_matches* raw = nullptr;
  size_t size = 0;
  if (baseline == "linear") {
    xi_baseline* b = nullptr;
    check(xi_baseline_new(corpus.get(), &b));
    BaselinePtr base(b);
    size = xi_baseline_size(base.get());
    check(xi_baseline_retrieve(base.get(), q, mode, &raw));
  } else {
    auto trie = build_trie(corpus.get());
    size = xi_trie_size(trie.get());
    check(xi_trie_retrieve(trie.get(), q, mode, &raw));
  }
  MatchesPtr matches(raw);
  for (const auto& [text, m] : lines_of(matches.get())) {
    std::printf("%s\t%s\n", text.c_str(), xi_mode_name(m));
  }
  std::printf("visited=%llu of %zu\n",
              static_cast<unsigned long long>(xi_matches_visits(matches.get())), size);
  return kExitOk;
}

// --- dump -------------------------------------------------------------------

int cmd_dump(const std::string& corpus_path, const std::string& format) {
  xi_dump_format f;
  if (format == "text") {
    f = XI_DUMP_TEXT;
  } else if (format == "dot") {
    f = XI_DUMP_DOT;
  } else {
    std::cerr << "exprindex: unknown format " << format << "\n";
    return kExitParse;
  }
  auto corpus = load_corpus(corpus_path);
  auto trie = build_trie(corpus.get());
  char* out = nullptr;
  check(xi_trie_dump(trie.get(), f, &out));
  std::fputs(take(out).c_str(), stdout);
  return kExitOk;
}

// --- bench ------------------------------------------------------------------

struct ModeStats {
  xi_query_mode mode;
  uint64_t trie_results = 0;
  uint64_t base_results = 0;
  uint64_t trie_visits = 0;
  uint64_t base_visits = 0;
  uint64_t pruned = 0;  // queries with visits strictly below the trie size
  double trie_seconds = 0;
  double base_seconds = 0;
  uint64_t mismatches = 0;
};

int cmd_bench(const std::string& corpus_path, const std::string& queries_path,
              const std::vector<std::string>& modes, const std::string& baseline,
              bool inject_mismatch) {
  using Clock = std::chrono::steady_clock;
  auto seconds = [](Clock::duration d) { return std::chrono::duration<double>(d).count(); };

  auto corpus = load_corpus(corpus_path);
  auto queries = load_corpus(queries_path);
  auto build_start = Clock::now();
  auto trie = build_trie(corpus.get());
  double build_seconds = seconds(Clock::now() - build_start);
  bool with_baseline = baseline == "linear";
  BaselinePtr base;
  if (with_baseline) {
    xi_baseline* b = nullptr;
    check(xi_baseline_new(corpus.get(), &b));
    base.reset(b);
  }
  size_t size = xi_trie_size(trie.get());
  size_t nq = xi_corpus_size(queries.get());

  std::vector<ModeStats> stats;
  for (const auto& m : modes) stats.push_back(ModeStats{parse_mode(m)});

  for (size_t i = 0; i < nq; ++i) {
    xi_expr q;
    check(xi_corpus_get(queries.get(), i, &q, nullptr));
    for (ModeStats& st : stats) {
      xi_matches* raw = nullptr;
      auto t0 = Clock::now();
      check(xi_trie_retrieve(trie.get(), q, st.mode, &raw));
      st.trie_seconds += seconds(Clock::now() - t0);
      MatchesPtr got(raw);
      uint64_t visits = xi_matches_visits(got.get());
      st.trie_visits += visits;
      if (visits < size) ++st.pruned;
      Lines trie_lines = lines_of(got.get());
      st.trie_results += trie_lines.size();
      if (!with_baseline) continue;

      t0 = Clock::now();
      check(xi_baseline_retrieve(base.get(), q, st.mode, &raw));
      st.base_seconds += seconds(Clock::now() - t0);
      MatchesPtr want(raw);
      st.base_visits += xi_matches_visits(want.get());
      Lines base_lines = lines_of(want.get());
      st.base_results += base_lines.size();
      // Test hook: drop one answer to exercise the mismatch path.
      if (inject_mismatch && !trie_lines.empty()) trie_lines.pop_back();
      if (trie_lines != base_lines) ++st.mismatches;
    }
  }

  auto mean_us = [nq](double s) { return nq ? 1e6 * s / static_cast<double>(nq) : 0.0; };
  std::printf("corpus      %zu expressions (%zu distinct)\n", xi_corpus_size(corpus.get()),
              size);
  std::printf("queries     %zu\n", nq);
  std::printf("build       %.3f s\n\n", build_seconds);
  std::printf("%-15s %10s %12s %10s %12s %12s %12s %10s\n", "mode", "results", "visits",
              "pruned", "trie_ms", "trie_us/q", "linear_ms", "mismatch");
  for (const ModeStats& st : stats) {
    std::printf("%-15s %10llu %12llu %10llu %12.2f %12.2f ", modes[&st - stats.data()].c_str(),
                static_cast<unsigned long long>(st.trie_results),
                static_cast<unsigned long long>(st.trie_visits),
                static_cast<unsigned long long>(st.pruned), 1e3 * st.trie_seconds,
                mean_us(st.trie_seconds));
    if (with_baseline) {
      std::printf("%12.2f %10llu\n", 1e3 * st.base_seconds,
                  static_cast<unsigned long long>(st.mismatches));
    } else {
      std::printf("%12s %10s\n", "-", "-");
    }
  }
  std::printf("\ncorpus_size=%zu\ntrie_size=%zu\nqueries=%zu\nbuild_s=%.6f\n",
              xi_corpus_size(corpus.get()), size, nq, build_seconds);
  uint64_t total_mismatches = 0;
  for (const ModeStats& st : stats) {
    std::string name = modes[&st - stats.data()];
    std::printf("%s.results=%llu\n", name.c_str(),
                static_cast<unsigned long long>(st.trie_results));
    std::printf("%s.visits=%llu\n", name.c_str(),
                static_cast<unsigned long long>(st.trie_visits));
    std::printf("%s.pruned_queries=%llu\n", name.c_str(),
                static_cast<unsigned long long>(st.pruned));
    std::printf("%s.trie_s=%.6f\n", name.c_str(), st.trie_seconds);
    std::printf("%s.trie_mean_us=%.3f\n", name.c_str(), mean_us(st.trie_seconds));
    if (with_baseline) {
      std::printf("%s.linear_results=%llu\n", name.c_str(),
                  static_cast<unsigned long long>(st.base_results));
      std::printf("%s.linear_visits=%llu\n", name.c_str(),
                  static_cast<unsigned long long>(st.base_visits));
      std::printf("%s.linear_s=%.6f\n", name.c_str(), st.base_seconds);
      std::printf("%s.linear_mean_us=%.3f\n", name.c_str(), mean_us(st.base_seconds));
      std::printf("%s.mismatches=%llu\n", name.c_str(),
                  static_cast<unsigned long long>(st.mismatches));
    }
    total_mismatches += st.mismatches;
  }
  if (total_mismatches > 0) {
    std::cerr << "exprindex: trie and linear baseline disagree on " << total_mismatches
              << " query/mode pair(s)\n";
    return kExitMismatch;
  }
  return kExitOk;
}

// --- gen --------------------------------------------------------------------

int cmd_gen(uint64_t seed, size_t size, const xi_shape& shape, const std::string& out_path) {
  char* text = nullptr;
  check(xi_generate(seed, size, &shape, &text));
  std::string body = take(text);
  if (out_path.empty() || out_path == "-") {
    std::fwrite(body.data(), 1, body.size(), stdout);
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << body;
  out.close();
  if (!out) {
    std::cerr << "exprindex: cannot write " << out_path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instance-trie indexing of first-order expressions"};
  app.require_subcommand(1);

  std::string expr_text;
  auto* parse = app.add_subcommand("parse", "Show the cell encoding of an expression");
  parse->add_option("expr", expr_text, "Expression")->required();

  std::string lhs, rhs;
  auto* unify = app.add_subcommand("unify", "Unify two expressions and classify them");
  unify->add_option("e1", lhs, "Left expression")->required();
  unify->add_option("e2", rhs, "Right expression")->required();

  // query/dump take the corpus either as --corpus or as the first positional.
  std::string corpus_path, mode = "unifiable", baseline, format = "text";
  std::vector<std::string> query_args;
  auto* query = app.add_subcommand("query", "Retrieve corpus expressions for a query");
  query->add_option("--corpus", corpus_path, "Corpus file");
  query->add_option("--mode", mode, "variant|instance|generalization|unifiable");
  query->add_option("--baseline", baseline, "Use the linear oracle scan instead of a trie")
      ->check(CLI::IsMember({"linear"}));
  query->add_option("args", query_args, "[corpus] query")->required()->expected(1, 2);

  std::vector<std::string> dump_args;
  auto* dump = app.add_subcommand("dump", "Build a trie from a corpus and print it");
  dump->add_option("--corpus", corpus_path, "Corpus file");
  dump->add_option("--format", format, "text|dot")->check(CLI::IsMember({"text", "dot"}));
  dump->add_option("path", dump_args, "Corpus file")->expected(0, 1);

  std::string queries_path;
  std::vector<std::string> bench_modes;
  std::string bench_baseline = "linear";
  bool inject = false;
  auto* bench = app.add_subcommand("bench", "Time trie retrieval against a linear scan");
  bench->add_option("--corpus", corpus_path, "Corpus file")->required();
  bench->add_option("--queries", queries_path, "Query file")->required();
  bench->add_option("--mode", bench_modes, "Query modes (default: all four)");
  bench->add_option("--baseline", bench_baseline, "linear, or none to skip the check")
      ->check(CLI::IsMember({"linear", "none"}));
  bench->add_flag("--inject-mismatch", inject)->group("");

  uint64_t seed = 1;
  size_t size = 100;
  std::string out_path;
  xi_shape shape;
  xi_shape_default(&shape);
  auto* gen = app.add_subcommand("gen", "Write a deterministic random corpus");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--size", size, "Number of expressions");
  gen->add_option("--max-depth", shape.max_depth, "Maximum nesting depth");
  gen->add_option("--max-arity", shape.max_arity, "Maximum constructor arity");
  gen->add_option("--symbols", shape.symbols, "Number of constructor symbols");
  gen->add_option("--variables", shape.variables, "Number of distinct variable names");
  gen->add_option("--var-percent", shape.var_percent, "Chance of a variable at inner positions")
      ->check(CLI::Range(0, 100));
  gen->add_option("-o,--output", out_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*parse) return cmd_parse(expr_text);
    if (*unify) return cmd_unify(lhs, rhs);
    if (*query) {
      std::string q = query_args.back();
      if (query_args.size() == 2) {
        if (!corpus_path.empty()) {
          std::cerr << "exprindex: corpus given twice\n";
          return kExitParse;
        }
        corpus_path = query_args.front();
      }
      if (corpus_path.empty()) {
        std::cerr << "exprindex: query needs a corpus\n";
        return kExitParse;
      }
      return cmd_query(corpus_path, mode, q, baseline);
    }
    if (*dump) {
      if (!dump_args.empty()) corpus_path = dump_args.front();
      if (corpus_path.empty()) {
        std::cerr << "exprindex: dump needs a corpus\n";
        return kExitParse;
      }
      return cmd_dump(corpus_path, format);
    }
    if (*bench) {
      if (bench_modes.empty()) {
        bench_modes = {"variant", "instance", "generalization", "unifiable"};
      }
      return cmd_bench(corpus_path, queries_path, bench_modes,
                       bench_baseline == "none" ? "" : bench_baseline, inject);
    }
    if (*gen) return cmd_gen(seed, size, shape, out_path);
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitParse;
}
