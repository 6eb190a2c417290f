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

// Word-level constraint solver for path predicates.
//
// Pipeline:
//   1. equality propagation: conjuncts `f(x) == k` where f is an invertible
//      chain over one symbol (+, -, ^, ~, unary -, * odd, constant shifts)
//      are solved by direct inversion;
//   2. interval propagation over unsigned comparisons; an empty domain is the
//      only way to prove Unsat;
//   3. bounded exhaustive search when at most one undetermined symbol is
//      left with domain width <= 2^16;
//   4. hill-climbing from the base input on a branch-distance fitness with
//      bit-level, alternating-variable and inversion moves, restarting from
//      perturbed points until the deadline.
// Every Sat model is re-evaluated against all conjuncts before returning.
#ifndef FUCE_SOLVER_H_
#define FUCE_SOLVER_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fuce/clock.h"
#include "fuce/symbolic.h"

namespace fuce {

struct Conjunct {
  SymRef cond;
  Polarity required = Polarity::kTrue;
};

// Path prefix conjuncts followed by the negated target condition.
struct PathPredicate {
  std::vector<Conjunct> conjuncts;
};

struct SolverStats {
  uint64_t propagations = 0;
  uint64_t search_nodes = 0;
  double elapsed_seconds = 0;
};

struct SolverVerdict {
  enum class Kind { kSat, kUnsat, kUnknown };
  Kind kind = Kind::kUnknown;
  std::map<uint32_t, Word> model;  // input word index -> value
  std::string reason;              // why Unsat / Unknown
  SolverStats stats;

  bool sat() const { return kind == Kind::kSat; }
};

struct SolverOptions {
  uint64_t rng_seed = 0;
  // Fitness evaluations before giving up with Unknown, independent of the
  // deadline.
  uint64_t max_evaluations = 400'000;
};

// Branch distance of `cond` evaluating to `required` under `words`; 0 iff
// satisfied.
uint64_t BranchDistance(const Conjunct& c, std::span<const Word> words);

bool Satisfies(const PathPredicate& p, std::span<const Word> words);

// Applies `model` on top of `base`, growing it with zero words as needed.
std::vector<Word> ApplyModel(std::span<const Word> base,
                             const std::map<uint32_t, Word>& model);

// `deadline` is an absolute time on `clock`. Throws std::logic_error for
// malformed predicates (null terms).
SolverVerdict Solve(const PathPredicate& predicate, std::span<const Word> base,
                    Clock& clock, double deadline,
                    const SolverOptions& options = {});

}  // namespace fuce

#endif  // FUCE_SOLVER_H_
