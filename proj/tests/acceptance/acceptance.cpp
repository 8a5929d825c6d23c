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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every threshold is pinned below.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "exprindex/corpus.hpp"
#include "exprindex/instance_trie.hpp"
#include "exprindex/oracle.hpp"
#include "exprindex/substitution.hpp"
#include "exprindex/unify.hpp"
#include "random_trees.hpp"
#include "trie_check.hpp"

#ifndef EXPRINDEX_CLI
#error "EXPRINDEX_CLI must name the command-line binary"
#endif

namespace {

using namespace exprindex;
using oracle::Tree;
using Clock = std::chrono::steady_clock;

// C1
constexpr double kUnifyBudgetSeconds = 1e-3;
constexpr int kUnifyRepetitions = 1000;
// C4
constexpr int kModePairs = 100000;
constexpr double kModeBudgetSeconds = 60.0;
// C5
constexpr int kFilterTrials = 1000;
constexpr std::size_t kFilterMaxCorpus = 512;
// C6
constexpr int kStabilityCorpora = 20;
constexpr int kStabilityPermutations = 50;
// C7
constexpr int kLinearPairs = 10000;
// C8
constexpr std::size_t kBenchCorpus = 10000;
constexpr std::size_t kBenchQueries = 1000;
constexpr double kPrunedFraction = 0.95;
constexpr double kBenchBudgetSeconds = 60.0;
// C9
constexpr int kFuzzSteps = 10000;

constexpr std::uint64_t kSeed = 20240601;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const char* id, const char* name, const Outcome& o, double seconds) {
  if (!o.pass) ++failures;
  std::printf("%s  %-3s %-34s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), seconds);
  std::fflush(stdout);
}

void run(const char* id, const char* name, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  report(id, name, o, since(t0));
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<Tree> distinct(const std::vector<Tree>& set) {
  std::vector<Tree> out;
  std::set<std::string> seen;
  for (const Tree& t : set) {
    if (seen.insert(oracle::to_text(oracle::canonical(t))).second) out.push_back(t);
  }
  return out;
}

testing::TreeShape criterion_shape() {
  testing::TreeShape s;
  s.max_depth = 6;
  s.max_arity = 4;
  s.symbols = 8;
  s.variables = 5;
  return s;
}

// ---------------------------------------------------------------------------

Outcome unify_worked_example() {
  Arena arena;
  ExprRef e1 = parse("f(X, X)", arena);
  parse("z", arena);
  parse("z", arena);
  ExprRef e2 = parse("f(a, a)", arena);
  double worst = 0;
  UnifyResult r;
  for (int i = 0; i < kUnifyRepetitions; ++i) {
    auto t0 = Clock::now();
    r = unify(e1, e2);
    worst = std::max(worst, since(t0));
  }
  bool shape = r.mode == Mode::kSG && r.s1.size() == 1 && r.s2.empty() &&
               r.s1.bindings()[0].var.index == 1 && r.s1.bindings()[0].target.index == 6 &&
               e2.start == 5;
  return {shape && worst < kUnifyBudgetSeconds,
          fmt("mode=%s S1=[(%u, %u)] |S2|=%zu worst=%.1f us of %d runs",
              std::string(to_string(r.mode)).c_str(),
              r.s1.empty() ? 0u : r.s1.bindings()[0].var.index,
              r.s1.empty() ? 0u : r.s1.bindings()[0].target.index, r.s2.size(), worst * 1e6,
              kUnifyRepetitions)};
}

Outcome cell_layout() {
  Arena arena;
  ExprRef e = parse("f(a, X, g(b), Y, Y)", arena);
  const std::vector<CellTag> want = {CellTag::kCons, CellTag::kCons,  CellTag::kNoVar,
                                     CellTag::kCons, CellTag::kCons,  CellTag::kNoVar,
                                     CellTag::kOfVar};
  std::vector<CellTag> got;
  std::string tags;
  for (std::uint32_t i = 0; i < span(e); ++i) {
    got.push_back(arena[e.start + i].tag());
    tags += (i ? "," : "") + std::string(to_string(got.back()));
  }
  bool ok = got == want && arena[e.start + 6].back_offset() == 1;
  return {ok, fmt("[%s] offset=%u", tags.c_str(), arena[e.start + 6].back_offset())};
}

Outcome destructive_application() {
  Arena arena;
  ExprRef e = parse("f(a, X, g(b), Y, Y)", arena);
  ExprRef t = parse("h(a, Z)", arena);
  std::vector<Cell> before(arena.cells().begin(), arena.cells().end());
  apply_destructive(arena, e.start + 5, t.start);
  std::size_t changed = 0;
  for (std::uint32_t i = 0; i < arena.size(); ++i) changed += !(arena[i] == before[i]);
  bool ofvar_kept = arena[e.start + 6] == before[e.start + 6];
  std::string text = render(e);
  bool ok = ofvar_kept && changed == 1 && arena[e.start + 5].binding() == t.start &&
            text == "f(a, V0, g(b), h(a, V1), h(a, V1))";
  return {ok, fmt("cells changed=%zu ofvar kept=%d render=%s", changed, ofvar_kept, text.c_str())};
}

Outcome mode_equivalence() {
  testing::TreeGen gen(kSeed + 4, criterion_shape());
  std::size_t mismatches = 0, out_of_shape = 0;
  std::array<std::size_t, 5> counts{};
  std::string first;
  auto t0 = Clock::now();
  for (int i = 0; i < kModePairs; ++i) {
    auto [a, b] = gen.pair();
    if (testing::depth(a) > 6 || testing::depth(b) > 6 || oracle::max_var(a) >= 5 ||
        oracle::max_var(b) >= 5) {
      ++out_of_shape;
    }
    Arena arena;
    Mode got = unify(testing::to_cells(a, arena), testing::to_cells(b, arena)).mode;
    Mode want = oracle::classify(a, b);
    ++counts[static_cast<std::size_t>(want)];
    if (got != want && mismatches++ == 0) {
      first = oracle::to_text(a) + " vs " + oracle::to_text(b);
    }
  }
  double seconds = since(t0);
  bool ok = mismatches == 0 && out_of_shape == 0 && seconds <= kModeBudgetSeconds;
  std::string detail =
      fmt("%d pairs, %zu mismatches, %zu out of shape, VR/SG/SI/OU/NU=%zu/%zu/%zu/%zu/%zu",
          kModePairs, mismatches, out_of_shape, counts[0], counts[1], counts[2], counts[3],
          counts[4]);
  if (!first.empty()) detail += "; first: " + first;
  return {ok, detail};
}

Outcome perfect_filtering() {
  testing::TreeGen gen(kSeed + 5, criterion_shape());
  std::size_t mismatches = 0, answers = 0, largest = 0;
  std::string first;
  for (int trial = 0; trial < kFilterTrials; ++trial) {
    auto corpus = gen.corpus(gen.below(kFilterMaxCorpus + 1));
    largest = std::max(largest, corpus.size());
    Arena arena;
    InstanceTrie trie;
    for (const Tree& t : corpus) trie.insert(testing::to_cells(t, arena));
    auto set = distinct(corpus);
    Tree q;
    if (corpus.empty() || gen.chance(0.3)) {
      q = gen.tree();
    } else {
      const Tree& base = corpus[gen.below(corpus.size())];
      switch (gen.below(4)) {
        case 0:
          q = gen.rename(base);
          break;
        case 1:
          q = gen.instantiate(base);
          break;
        case 2:
          q = gen.generalize(base);
          break;
        default:
          q = gen.mutate(base);
          break;
      }
    }
    ExprRef qc = testing::to_cells(q, arena);
    for (QueryMode m : {QueryMode::kVariant, QueryMode::kInstance, QueryMode::kGeneralization,
                        QueryMode::kUnifiable}) {
      auto got = testing::answer_lines(trie.retrieve(qc, m));
      auto want = testing::answer_lines(set, oracle::retrieve(set, q, m));
      answers += want.size();
      if (got != want && mismatches++ == 0) {
        first = oracle::to_text(q) + " " + std::string(to_string(m));
      }
    }
  }
  std::string detail = fmt("%d trials x 4 modes, corpus <= %zu, %zu answers, %zu mismatches",
                           kFilterTrials, largest, answers, mismatches);
  if (!first.empty()) detail += "; first: " + first;
  return {mismatches == 0, detail};
}

Outcome stability() {
  testing::TreeGen gen(kSeed + 6, criterion_shape());
  std::size_t runs = 0, differing = 0, deletions = 0;
  for (int c = 0; c < kStabilityCorpora; ++c) {
    auto corpus = gen.corpus(40 + gen.below(80));
    std::set<std::string> target;
    for (const Tree& t : corpus) target.insert(oracle::to_text(oracle::canonical(t)));
    std::string reference;
    {
      Arena arena;
      InstanceTrie trie;
      for (const Tree& t : corpus) trie.insert(testing::to_cells(t, arena));
      reference = trie.dump(DumpFormat::kText);
      if (reference != testing::reference_dump(corpus)) ++differing;
    }
    for (int p = 0; p < kStabilityPermutations; ++p) {
      auto decoys = gen.corpus(10 + gen.below(30));
      std::vector<Tree> pending = corpus;
      pending.insert(pending.end(), decoys.begin(), decoys.end());
      std::shuffle(pending.begin(), pending.end(), gen.rng());
      Arena arena;
      InstanceTrie trie;
      std::vector<Tree> present;
      while (!pending.empty()) {
        Tree next = std::move(pending.back());
        pending.pop_back();
        trie.insert(testing::to_cells(next, arena));
        present.push_back(std::move(next));
        if (gen.chance(0.35)) {
          std::size_t k = gen.below(present.size());
          Tree gone = present[k];
          present.erase(present.begin() + static_cast<std::ptrdiff_t>(k));
          if (trie.remove(testing::to_cells(gone, arena)) == RemoveOutcome::kRemoved) {
            ++deletions;
          }
          // Every copy of that variant is gone now.
          std::string key = oracle::to_text(oracle::canonical(gone));
          std::erase_if(present, [&](const Tree& t) {
            return oracle::to_text(oracle::canonical(t)) == key;
          });
          // Corpus members come back later, at a random point.
          if (target.count(key)) {
            pending.insert(pending.begin() + static_cast<std::ptrdiff_t>(gen.below(pending.size() + 1)),
                           gone);
          }
        }
      }
      for (const Tree& t : present) {
        if (!target.count(oracle::to_text(oracle::canonical(t)))) {
          if (trie.remove(testing::to_cells(t, arena)) == RemoveOutcome::kRemoved) ++deletions;
        }
      }
      ++runs;
      if (trie.size() != target.size() || trie.dump(DumpFormat::kText) != reference) ++differing;
    }
  }
  return {differing == 0 && runs >= kStabilityCorpora * kStabilityPermutations,
          fmt("%d corpora x %d orders, %zu deletions, %zu differing dumps", kStabilityCorpora,
              kStabilityPermutations, deletions, differing)};
}

Outcome occurs_check_economy() {
  testing::TreeShape shape = criterion_shape();
  shape.linear = true;
  testing::TreeGen gen(kSeed + 7, shape);
  std::uint64_t checks = 0;
  std::size_t nonlinear = 0, unifiable = 0;
  for (int i = 0; i < kLinearPairs; ++i) {
    auto [a, b] = gen.pair();
    if (!testing::is_linear(a) || !testing::is_linear(b)) ++nonlinear;
    Arena arena;
    UnifyResult r = unify(testing::to_cells(a, arena), testing::to_cells(b, arena));
    checks += r.occurs_checks;
    unifiable += r.mode != Mode::kNU;
  }
  return {checks == 0 && nonlinear == 0,
          fmt("%d pairs (%zu unifiable), occurs checks=%llu, non-linear inputs=%zu",
              kLinearPairs, unifiable, static_cast<unsigned long long>(checks), nonlinear)};
}

struct Shell {
  int code;
  std::string out;
};

Shell shell(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome pruning() {
  std::string dir = "/tmp";
  if (const char* t = std::getenv("TMPDIR")) dir = t;
  std::string corpus = dir + "/exprindex_accept_corpus.txt";
  std::string queries = dir + "/exprindex_accept_queries.txt";
  std::ofstream(corpus, std::ios::binary) << generate_corpus(kSeed + 8, kBenchCorpus, {});
  std::ofstream(queries, std::ios::binary) << generate_corpus(kSeed + 9, kBenchQueries, {});
  auto t0 = Clock::now();
  Shell r = shell(std::string("'") + EXPRINDEX_CLI + "' bench --corpus '" + corpus +
                  "' --queries '" + queries +
                  "' --mode generalization --mode variant --baseline linear");
  double seconds = since(t0);
  std::map<std::string, std::string> kv;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    auto eq = line.find('=');
    if (eq != std::string::npos && line.find(' ') == std::string::npos) {
      kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
  }
  auto num = [&](const std::string& k) { return kv.count(k) ? std::stod(kv[k]) : -1.0; };
  double need = kPrunedFraction * static_cast<double>(kBenchQueries);
  // "Pruned" counts visits strictly below the number of distinct stored
  // expressions, which is at most the corpus size.
  bool ok = r.code == 0 && num("queries") == static_cast<double>(kBenchQueries) &&
            num("corpus_size") == static_cast<double>(kBenchCorpus) &&
            num("generalization.pruned_queries") >= need &&
            num("variant.pruned_queries") >= need && num("generalization.mismatches") == 0 &&
            num("variant.mismatches") == 0 && seconds <= kBenchBudgetSeconds;
  std::remove(corpus.c_str());
  std::remove(queries.c_str());
  return {ok, fmt("exit=%d corpus=%.0f distinct=%.0f pruned gen=%.0f var=%.0f of %zu, "
                  "mean visits gen=%.1f var=%.1f, bench wall=%.1f s",
                  r.code, num("corpus_size"), num("trie_size"),
                  num("generalization.pruned_queries"), num("variant.pruned_queries"),
                  kBenchQueries, num("generalization.visits") / kBenchQueries,
                  num("variant.visits") / kBenchQueries, seconds)};
}

Outcome structural_sweep() {
  testing::TreeGen gen(kSeed + 10, criterion_shape());
  auto pool = gen.corpus(400);
  Arena arena;
  std::vector<ExprRef> cells;
  std::vector<std::string> keys;
  for (const Tree& t : pool) {
    cells.push_back(testing::to_cells(t, arena));
    keys.push_back(oracle::to_text(oracle::canonical(t)));
  }
  InstanceTrie trie;
  std::set<std::string> expected;
  std::size_t violations = 0, pairs = 0, size_errors = 0, max_size = 0;
  std::string first;
  for (int step = 0; step < kFuzzSteps; ++step) {
    std::size_t k = gen.below(cells.size());
    if (gen.chance(0.55)) {
      trie.insert(cells[k]);
      expected.insert(keys[k]);
    } else {
      trie.remove(cells[k]);
      expected.erase(keys[k]);
    }
    auto rep = testing::check_invariants(trie);
    pairs += rep.pairs;
    if (rep.violations > 0 && violations == 0) first = rep.first;
    violations += rep.violations;
    size_errors += trie.size() != expected.size();
    max_size = std::max(max_size, trie.size());
  }
  std::string detail = fmt("%d steps, max size %zu, %zu parent/child checks, %zu violations, "
                           "%zu size errors",
                           kFuzzSteps, max_size, pairs, violations, size_errors);
  if (!first.empty()) detail += "; first: " + first;
  return {violations == 0 && size_errors == 0, detail};
}

}  // namespace

int main() {
  run("C1", "unify worked example", unify_worked_example);
  run("C2", "cell layout", cell_layout);
  run("C3", "destructive application", destructive_application);
  run("C4", "mode equals oracle", mode_equivalence);
  run("C5", "perfect filtering", perfect_filtering);
  run("C6", "insertion/removal order stability", stability);
  run("C7", "occurs-check economy", occurs_check_economy);
  run("C8", "pruning effectiveness", pruning);
  run("C9", "structural invariant sweep", structural_sweep);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
