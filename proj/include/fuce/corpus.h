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

// Built-in benchmark designs: trojaned DUTs with trojan-free golden twins.
#ifndef FUCE_CORPUS_H_
#define FUCE_CORPUS_H_

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuce/detector.h"
#include "fuce/dsl.h"
#include "fuce/test_case.h"

namespace fuce {

// Trigger kind (Combinational/Sequential) x payload (With/WithOut Memory).
enum class TrojanType : uint8_t { kCWOM, kCWM, kSWOM, kSWM, kNone };
enum class Severity : uint8_t { kLow, kHigh, kNone };

std::string_view TrojanTypeName(TrojanType t);
std::string_view SeverityName(Severity s);
// With-memory payloads are high severity, without-memory ones low.
Severity SeverityOf(TrojanType t);

struct BenchmarkEntry {
  std::string name;
  std::string dut_source;
  std::string golden_source;
  Design dut;
  GoldenModel golden;
  TrojanType trojan_type = TrojanType::kNone;
  Severity severity = Severity::kNone;
  std::string trigger_note;
  std::map<std::string, uint64_t> scale_params;
  uint64_t step_limit = 0;
  // Branches that exist only in the DUT; taking one's true edge fires the
  // trigger.
  std::vector<BranchId> trojan_branches;
  std::vector<std::vector<Word>> trigger_tests;
};

struct SuiteOptions {
  // Cycle bomb of the motivating controller: 2^12 - 1 by default,
  // 2^20 - 1 in faithful mode (which also raises the step limit).
  bool faithful = false;
};

std::vector<BenchmarkEntry> BuiltinSuite(const SuiteOptions& options = {});

// Splits an annotated template: lines ending in `//T` exist only in the DUT,
// lines ending in `//G` only in the golden model. Markers are stripped.
std::pair<std::string, std::string> SplitTemplate(std::string_view text);

// True when running `words` takes the true edge of a trojan branch.
bool FiresTrigger(const BenchmarkEntry& entry, std::span<const Word> words);

// Random seed inputs: input_arity + extra words, each in [0, 255].
std::vector<TestCase> RandomSeeds(const Design& design, size_t count,
                                  size_t extra_words, std::mt19937_64& rng);

}  // namespace fuce

#endif  // FUCE_CORPUS_H_
