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

// Coverage-guided greybox fuzzing: energy schedule, deterministic and havoc
// mutators, and the append-only queue of interesting inputs.
#ifndef FUCE_FUZZ_H_
#define FUCE_FUZZ_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "fuce/clock.h"
#include "fuce/coverage.h"
#include "fuce/dsl.h"
#include "fuce/executor.h"
#include "fuce/test_case.h"

namespace fuce {

// Havoc never grows a test beyond this many words.
inline constexpr size_t kMaxTestWords = 1024;

// {0, 1, 2^7-1, 2^7, 2^8-1, 2^15-1, 2^15, 2^16-1, 2^20-1, 2^31-1, 2^32-1}
const std::vector<Word>& VanillaInterestingValues();

// Vanilla values followed by the design's literals not already present.
std::vector<Word> InterestingValues(const Design& design,
                                    bool design_literals);

struct SeedMetrics {
  uint64_t exec_steps = 0;
  uint64_t bitmap_size = 0;  // branch-pair keys touched by its run
  uint32_t depth = 0;        // fuzz derivation depth
};

struct CorpusAverages {
  double steps = 0;
  double bitmap = 0;
};

uint32_t CalculateEnergy(const SeedMetrics& m, const CorpusAverages& avg,
                         uint32_t k_base, uint32_t k_max);

// Children of the deterministic stage, addressed by index. The stream is
// stage-major: all 32w bit flips, 4w byte flips, 56w lane arithmetic
// (+-1, +-4, +-16, +-32 on 4 byte, 2 half-word and 1 word lanes), then w*T
// substitutions from `table`.
uint64_t DeterministicCount(size_t words, size_t table_size);
std::vector<Word> DeterministicChild(std::span<const Word> parent,
                                     uint64_t index,
                                     std::span<const Word> table);

// Applies 1-16 stacked random operations.
std::vector<Word> MutateHavoc(std::span<const Word> parent,
                              std::mt19937_64& rng);

// Uniform integer in [0, bound) using plain modulo so that sequences are
// identical across standard library implementations.
inline uint64_t RandBelow(std::mt19937_64& rng, uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

struct QueueEntry {
  uint64_t id = 0;
  TestCase test;
  SeedMetrics metrics;
  double found_at = 0;  // clock seconds
  bool det_done = false;
  uint64_t det_cursor = 0;
};

class FuzzQueue {
 public:
  uint64_t Append(TestCase test, const SeedMetrics& metrics, double now);

  const std::vector<QueueEntry>& entries() const { return entries_; }
  QueueEntry& at(size_t i) { return entries_[i]; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  size_t cursor() const { return cursor_; }
  void set_cursor(size_t c) { cursor_ = c; }

  CorpusAverages Averages() const;
  // Point-in-time copy in queue order.
  std::vector<TestCase> Snapshot() const;
  std::vector<uint64_t> SnapshotIds() const;

 private:
  std::vector<QueueEntry> entries_;
  size_t cursor_ = 0;
  double sum_steps_ = 0;
  double sum_bitmap_ = 0;
};

// Executes `words`, charges the clock and merges coverage. Returns whether
// the run touched a new (branch-pair, bucket) combination.
bool IsInteresting(const Design& design, std::span<const Word> words,
                   CoverageMap& global, Clock& clock, uint64_t step_limit,
                   ExecutionTrace* trace = nullptr,
                   CoverageDelta* delta = nullptr);

struct FuzzOptions {
  uint32_t k_base = 64;
  uint32_t k_max = 1024;
  uint64_t step_limit = kDefaultStepLimit;
  bool design_literals = true;
};

struct RoundOutcome {
  uint64_t new_entries = 0;
  uint64_t executions = 0;
  std::optional<double> last_novel_at;
  bool stopped = false;  // hook or yield predicate ended the round early
};

// Called for every retained child; returns true to stop the campaign.
using RetainHook =
    std::function<bool(const QueueEntry&, const ExecutionTrace&)>;
// Polled after each execution; returns true to end the round early.
using YieldCheck = std::function<bool()>;

class Fuzzer {
 public:
  Fuzzer(const Design& design, FuzzOptions options, uint64_t rng_seed);

  // Fuzzes the entry under the queue cursor and advances the cursor.
  RoundOutcome FuzzRound(FuzzQueue& queue, CoverageMap& global, Clock& clock,
                         PhaseId phase, const RetainHook& on_retain,
                         const YieldCheck& should_yield);

  const std::vector<Word>& table() const { return table_; }

 private:
  // Returns true when the round must stop.
  bool TryChild(std::vector<Word> words, Origin origin, size_t parent_index,
                FuzzQueue& queue, CoverageMap& global, Clock& clock,
                PhaseId phase, const RetainHook& on_retain,
                RoundOutcome& out);

  const Design& design_;
  FuzzOptions options_;
  std::mt19937_64 rng_;
  std::vector<Word> table_;
};

}  // namespace fuce

#endif  // FUCE_FUZZ_H_
