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

// Concrete execution of a design with branch-pair instrumentation.
#ifndef FUCE_EXECUTOR_H_
#define FUCE_EXECUTOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fuce/dsl.h"
#include "fuce/interpreter.h"
#include "fuce/test_case.h"

namespace fuce {

inline constexpr uint64_t kDefaultStepLimit = 1'000'000;

struct Decision {
  BranchId branch = 0;
  Polarity polarity = Polarity::kFalse;
  uint32_t occurrence = 0;  // dynamic occurrence index of this branch

  BranchEdge edge() const { return {branch, polarity}; }
  friend bool operator==(const Decision&, const Decision&) = default;
};

struct OutputTrace {
  std::vector<Word> values;
  friend bool operator==(const OutputTrace&, const OutputTrace&) = default;
};

struct ExecutionTrace {
  std::vector<Decision> decisions;
  OutputTrace outputs;
  uint64_t steps_used = 0;
  std::optional<RuntimeFault> fault;
  bool input_exhausted = false;

  friend bool operator==(const ExecutionTrace&,
                         const ExecutionTrace&) = default;
};

// Deterministic; faults are reported in the trace, never thrown.
ExecutionTrace Execute(const Design& design, std::span<const Word> words,
                       uint64_t step_limit = kDefaultStepLimit);

inline ExecutionTrace Execute(const Design& design, const TestCase& test,
                              uint64_t step_limit = kDefaultStepLimit) {
  return Execute(design, test.words, step_limit);
}

}  // namespace fuce

#endif  // FUCE_EXECUTOR_H_
