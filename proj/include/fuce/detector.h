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

// Differential trojan oracle: a test is suspicious when the DUT's output
// trace deviates from the golden model's.
#ifndef FUCE_DETECTOR_H_
#define FUCE_DETECTOR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuce/dsl.h"
#include "fuce/executor.h"

namespace fuce {

// A trojan-free reference design, or a recorded input -> output table.
class GoldenModel {
 public:
  static GoldenModel FromDesign(Design reference);
  static GoldenModel FromTable(std::map<std::vector<Word>, OutputTrace> table);
  // {"entries": [{"input": [...], "output": [...]}, ...]}
  static GoldenModel FromTableJson(std::string_view json);

  // nullopt on a table miss.
  std::optional<ExecutionTrace> Run(std::span<const Word> words,
                                    uint64_t step_limit) const;

  bool is_table() const { return !design_; }
  const Design* design() const { return design_ ? &*design_ : nullptr; }

 private:
  std::optional<Design> design_;
  std::map<std::vector<Word>, OutputTrace> table_;
};

struct Witness {
  std::optional<uint64_t> test_id;
  std::vector<Word> test;
  size_t divergence_index = 0;
  std::optional<Word> dut_value;     // absent when the DUT trace ended
  std::optional<Word> golden_value;  // absent when the golden trace ended
  OutputTrace dut_trace;
  OutputTrace golden_trace;
  std::optional<RuntimeFault> dut_fault;
  std::optional<RuntimeFault> golden_fault;
};

struct DetectionVerdict {
  bool detected = false;
  bool golden_unavailable = false;
  std::optional<Witness> witness;
};

// Position-wise comparison including length. When both runs hit the step
// limit only their common output prefix is compared. A fault that the
// golden run does not share is a deviation.
DetectionVerdict CompareTraces(const ExecutionTrace& dut,
                               const ExecutionTrace& golden);

DetectionVerdict Check(const Design& dut, const GoldenModel& golden,
                       std::span<const Word> words,
                       uint64_t step_limit = kDefaultStepLimit,
                       std::optional<uint64_t> test_id = std::nullopt);

// Same as Check with an already computed DUT trace.
DetectionVerdict CheckTrace(const ExecutionTrace& dut_trace,
                            const GoldenModel& golden,
                            std::span<const Word> words, uint64_t step_limit,
                            std::optional<uint64_t> test_id = std::nullopt);

}  // namespace fuce

#endif  // FUCE_DETECTOR_H_
