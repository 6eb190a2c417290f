// Copyright 2026 The FuCE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Concolic exploration: symbolic shadow execution, the global execution
// tree of observed decisions, and the phase loop that turns uncovered tree
// edges into solver-generated tests.
#ifndef FUCE_CONCOLIC_H_
#define FUCE_CONCOLIC_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuce/clock.h"
#include "fuce/coverage.h"
#include "fuce/dsl.h"
#include "fuce/executor.h"
#include "fuce/solver.h"
#include "fuce/symbolic.h"
#include "fuce/test_case.h"

namespace fuce {

// Terms deeper than this are replaced by their concrete value during shadow
// execution.
inline constexpr uint32_t kMaxShadowDepth = 256;

struct ConditionRecord {
  BranchId branch = 0;
  uint32_t occurrence = 0;
  SymRef cond;  // boolean term; constant when input-independent
  Polarity taken = Polarity::kFalse;
  // Side conditions (symbolic divisor != 0) met since the previous decision.
  std::vector<SymRef> guards;
};

struct ShadowTrace {
  std::vector<ConditionRecord> records;
  ExecutionTrace concrete;  // decisions/outputs from the same run
};

// Concrete execution with a symbolic store, in lock-step with Execute().
ShadowTrace ShadowExecute(const Design& design, std::span<const Word> words,
                          uint64_t step_limit = kDefaultStepLimit);

struct FrontierEntry {
  uint32_t node = 0;
  Polarity missing = Polarity::kFalse;
};

class ExecutionTree {
 public:
  static constexpr int32_t kNone = -1;

  struct Node {
    BranchId branch = 0;
    uint32_t occurrence = 0;
    int32_t parent = kNone;
    Polarity via = Polarity::kFalse;  // polarity of parent leading here
    int32_t child[2] = {kNone, kNone};
    bool seen[2] = {false, false};
    bool unsat[2] = {false, false};
    uint32_t attempted_round[2] = {0, 0};  // 0 = never
    SymRef cond;
    std::vector<SymRef> guards;
    uint32_t witness = 0;  // index into witnesses()
  };

  // Extends the trie along `records`; `witness` is the test that produced
  // them. Returns the number of new nodes. Idempotent for repeated traces.
  size_t Grow(const std::vector<ConditionRecord>& records,
              std::span<const Word> witness);

  // DFS pre-order (false side first) over one-sided nodes. Entries whose
  // static edge is uncovered in `global` come first; order is otherwise
  // preserved. Skips edges proved unsat and edges attempted in `round`.
  // When `admitted` is given (one list per branch, updated in place), at
  // most `occurrence_cap` distinct occurrence levels per branch get in.
  std::vector<FrontierEntry> Frontier(
      const CoverageMap& global, uint32_t round, uint32_t occurrence_cap,
      std::vector<std::vector<uint32_t>>* admitted = nullptr) const;

  // Prefix conjuncts (taken polarities and guards) followed by the target
  // condition with `missing` polarity. Constant conjuncts that already hold
  // and repeated conjuncts are dropped.
  PathPredicate BuildPredicate(uint32_t node, Polarity missing) const;

  const Node& node(uint32_t i) const { return nodes_[i]; }
  Node& mutable_node(uint32_t i) { return nodes_[i]; }
  size_t size() const { return nodes_.size(); }
  int32_t root() const { return root_; }
  const std::vector<Word>& witness(uint32_t i) const { return witnesses_[i]; }

  std::string ToDot() const;

 private:
  std::vector<Node> nodes_;
  std::vector<std::vector<Word>> witnesses_;
  int32_t root_ = kNone;
};

struct ConcolicOptions {
  uint64_t step_limit = kDefaultStepLimit;
  uint32_t occurrence_cap = 4;
  double min_solver_seconds = 0.05;
  uint64_t rng_seed = 0;
};

struct ConcolicOutcome {
  uint64_t tests_emitted = 0;
  bool budget_exhausted = false;
  bool stopped = false;  // sink requested a stop
  uint64_t sat = 0;
  uint64_t unsat = 0;
  uint64_t unknown = 0;
  uint64_t replay_failures = 0;
};

struct EmissionTarget {
  BranchId branch = 0;
  uint32_t occurrence = 0;
  Polarity polarity = Polarity::kFalse;
};

// Receives each emitted test with its concrete trace; returns true to stop
// the phase (e.g. trojan detected).
using ConcolicSink = std::function<bool(TestCase test, const ExecutionTrace&,
                                        const EmissionTarget&)>;

// Owns the execution tree across phases of one campaign.
class ConcolicEngine {
 public:
  ConcolicEngine(const Design& design, ConcolicOptions options);

  // Shadow-executes `seeds` not seen before (by `seed_ids`), grows the tree
  // and walks the frontier until it is exhausted or `budget` seconds of
  // `clock` have elapsed.
  ConcolicOutcome RunPhase(std::span<const TestCase> seeds,
                           std::span<const uint64_t> seed_ids,
                           const CoverageMap& global, Clock& clock,
                           double budget, PhaseId phase,
                           const ConcolicSink& sink);

  const ExecutionTree& tree() const { return tree_; }

 private:
  void Absorb(std::span<const Word> words, Clock& clock);

  const Design& design_;
  ConcolicOptions options_;
  ExecutionTree tree_;
  std::vector<uint64_t> absorbed_;  // sorted ids already in the tree
  uint32_t round_ = 0;
  uint64_t solver_calls_ = 0;
};

}  // namespace fuce

#endif  // FUCE_CONCOLIC_H_
