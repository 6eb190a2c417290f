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

#include "fuce/fuzz.h"

#include <algorithm>
#include <cmath>

namespace fuce {
namespace {

constexpr int kArithDeltas[8] = {1, -1, 4, -4, 16, -16, 32, -32};
constexpr uint64_t kBitFlips = 32;
constexpr uint64_t kByteFlips = 4;
constexpr uint64_t kArith = 7 * 8;  // lanes x deltas

Word LaneAdd(Word w, int lane, int delta) {
  // lanes 0-3: bytes, 4-5: half-words, 6: whole word
  if (lane == 6) return w + static_cast<Word>(delta);
  int shift, bits;
  if (lane < 4) {
    shift = 8 * lane;
    bits = 8;
  } else {
    shift = 16 * (lane - 4);
    bits = 16;
  }
  Word mask = ((Word{1} << bits) - 1) << shift;
  Word v = (w & mask) >> shift;
  v = (v + static_cast<Word>(delta)) & ((Word{1} << bits) - 1);
  return (w & ~mask) | (v << shift);
}

}  // namespace

const std::vector<Word>& VanillaInterestingValues() {
  static const std::vector<Word> kValues = {
      0,       1,          127,         128,        255,       32767,
      32768,   65535,      1048575,     2147483647, 4294967295u};
  return kValues;
}

std::vector<Word> InterestingValues(const Design& design,
                                    bool design_literals) {
  std::vector<Word> out = VanillaInterestingValues();
  if (!design_literals) return out;
  for (Word w : design.params.literals) {
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  }
  return out;
}

uint32_t CalculateEnergy(const SeedMetrics& m, const CorpusAverages& avg,
                         uint32_t k_base, uint32_t k_max) {
  double steps = std::max<double>(static_cast<double>(m.exec_steps), 1.0);
  double avg_steps = std::max(avg.steps, 1.0);
  double f_speed = std::clamp(avg_steps / steps, 0.25, 4.0);
  double f_cov = 1.0;
  if (avg.bitmap > 0) {
    f_cov = std::clamp(static_cast<double>(m.bitmap_size) / avg.bitmap, 0.25,
                       4.0);
  }
  double f_depth = 1.0 + std::min<double>(m.depth, 8) / 8.0;
  double k = std::round(k_base * f_speed * f_cov * f_depth);
  return static_cast<uint32_t>(
      std::clamp(k, 1.0, static_cast<double>(std::max<uint32_t>(k_max, 1))));
}

uint64_t DeterministicCount(size_t words, size_t table_size) {
  return words * (kBitFlips + kByteFlips + kArith + table_size);
}

std::vector<Word> DeterministicChild(std::span<const Word> parent,
                                     uint64_t index,
                                     std::span<const Word> table) {
  std::vector<Word> out(parent.begin(), parent.end());
  const uint64_t w = parent.size();
  if (index < kBitFlips * w) {
    out[index / 32] ^= Word{1} << (index % 32);
    return out;
  }
  index -= kBitFlips * w;
  if (index < kByteFlips * w) {
    out[index / 4] ^= Word{0xFF} << (8 * (index % 4));
    return out;
  }
  index -= kByteFlips * w;
  if (index < kArith * w) {
    uint64_t word = index / kArith;
    uint64_t slot = index % kArith;
    out[word] = LaneAdd(out[word], static_cast<int>(slot / 8),
                        kArithDeltas[slot % 8]);
    return out;
  }
  index -= kArith * w;
  out[index / table.size()] = table[index % table.size()];
  return out;
}

std::vector<Word> MutateHavoc(std::span<const Word> parent,
                              std::mt19937_64& rng) {
  std::vector<Word> out(parent.begin(), parent.end());
  uint64_t ops = 1 + RandBelow(rng, 16);
  for (uint64_t k = 0; k < ops; ++k) {
    size_t n = out.size();
    switch (RandBelow(rng, 6)) {
      case 0:  // bit flip
        if (n == 0) break;
        out[RandBelow(rng, n)] ^= Word{1} << RandBelow(rng, 32);
        break;
      case 1: {  // random byte
        if (n == 0) break;
        size_t i = RandBelow(rng, n);
        int shift = 8 * static_cast<int>(RandBelow(rng, 4));
        Word b = static_cast<Word>(RandBelow(rng, 256));
        out[i] = (out[i] & ~(Word{0xFF} << shift)) | (b << shift);
        break;
      }
      case 2:  // random word
        if (n == 0) break;
        out[RandBelow(rng, n)] = static_cast<Word>(rng());
        break;
      case 3: {  // delete sub-sequence
        if (n == 0) break;
        size_t start = RandBelow(rng, n);
        size_t len = 1 + RandBelow(rng, n - start);
        out.erase(out.begin() + start, out.begin() + start + len);
        break;
      }
      case 4: {  // clone sub-sequence
        if (n == 0 || n >= kMaxTestWords) break;
        size_t start = RandBelow(rng, n);
        size_t len = 1 + RandBelow(rng, n - start);
        len = std::min(len, kMaxTestWords - n);
        size_t at = RandBelow(rng, n + 1);
        std::vector<Word> piece(out.begin() + start,
                                out.begin() + start + len);
        out.insert(out.begin() + at, piece.begin(), piece.end());
        break;
      }
      default: {  // swap words
        if (n < 2) break;
        std::swap(out[RandBelow(rng, n)], out[RandBelow(rng, n)]);
        break;
      }
    }
  }
  return out;
}

uint64_t FuzzQueue::Append(TestCase test, const SeedMetrics& metrics,
                           double now) {
  QueueEntry e;
  e.id = entries_.size();
  e.test = std::move(test);
  e.metrics = metrics;
  e.found_at = now;
  sum_steps_ += static_cast<double>(metrics.exec_steps);
  sum_bitmap_ += static_cast<double>(metrics.bitmap_size);
  entries_.push_back(std::move(e));
  return entries_.back().id;
}

CorpusAverages FuzzQueue::Averages() const {
  if (entries_.empty()) return {};
  double n = static_cast<double>(entries_.size());
  return {sum_steps_ / n, sum_bitmap_ / n};
}

std::vector<TestCase> FuzzQueue::Snapshot() const {
  std::vector<TestCase> out;
  out.reserve(entries_.size());
  for (const QueueEntry& e : entries_) out.push_back(e.test);
  return out;
}

std::vector<uint64_t> FuzzQueue::SnapshotIds() const {
  std::vector<uint64_t> out;
  out.reserve(entries_.size());
  for (const QueueEntry& e : entries_) out.push_back(e.id);
  return out;
}

bool IsInteresting(const Design& design, std::span<const Word> words,
                   CoverageMap& global, Clock& clock, uint64_t step_limit,
                   ExecutionTrace* trace, CoverageDelta* delta) {
  ExecutionTrace t = Execute(design, words, step_limit);
  clock.Charge(ExecTicks(t.steps_used));
  CoverageDelta d = CoverageOf(t);
  bool novel = global.Merge(d);
  if (trace) *trace = std::move(t);
  if (delta) *delta = std::move(d);
  return novel;
}

Fuzzer::Fuzzer(const Design& design, FuzzOptions options, uint64_t rng_seed)
    : design_(design),
      options_(options),
      rng_(rng_seed),
      table_(InterestingValues(design, options.design_literals)) {}

bool Fuzzer::TryChild(std::vector<Word> words, Origin origin,
                      size_t parent_index, FuzzQueue& queue,
                      CoverageMap& global, Clock& clock, PhaseId phase,
                      const RetainHook& on_retain, RoundOutcome& out) {
  ExecutionTrace trace;
  CoverageDelta delta;
  ++out.executions;
  if (!IsInteresting(design_, words, global, clock, options_.step_limit,
                     &trace, &delta)) {
    return false;
  }
  const QueueEntry& parent = queue.entries()[parent_index];
  TestCase child;
  child.words = std::move(words);
  child.origin = origin;
  child.phase = phase;
  child.parent = parent.id;
  SeedMetrics m{trace.steps_used, delta.pairs.size(), parent.metrics.depth + 1};
  double now = clock.Now();
  queue.Append(std::move(child), m, now);
  ++out.new_entries;
  out.last_novel_at = now;
  if (on_retain && on_retain(queue.entries().back(), trace)) {
    out.stopped = true;
    return true;
  }
  return false;
}

RoundOutcome Fuzzer::FuzzRound(FuzzQueue& queue, CoverageMap& global,
                               Clock& clock, PhaseId phase,
                               const RetainHook& on_retain,
                               const YieldCheck& should_yield) {
  RoundOutcome out;
  if (queue.empty()) return out;
  size_t index = queue.cursor() % queue.size();
  queue.set_cursor((index + 1) % queue.size());
  auto yield = [&] {
    if (should_yield && should_yield()) {
      out.stopped = true;
      return true;
    }
    return false;
  };

  if (!queue.at(index).det_done) {
    const std::vector<Word> parent = queue.at(index).test.words;
    uint64_t total = DeterministicCount(parent.size(), table_.size());
    while (queue.at(index).det_cursor < total) {
      uint64_t i = queue.at(index).det_cursor++;
      if (TryChild(DeterministicChild(parent, i, table_),
                   Origin::kFuzzDeterministic, index, queue, global, clock,
                   phase, on_retain, out)) {
        return out;
      }
      if (yield()) {
        // Resume the deterministic stage on the next visit.
        queue.set_cursor(index);
        return out;
      }
    }
    queue.at(index).det_done = true;
  }

  const std::vector<Word> parent = queue.at(index).test.words;
  uint32_t k = CalculateEnergy(queue.at(index).metrics, queue.Averages(),
                               options_.k_base, options_.k_max);
  for (uint32_t trial = 0; trial < k; ++trial) {
    if (TryChild(MutateHavoc(parent, rng_), Origin::kFuzzHavoc, index, queue,
                 global, clock, phase, on_retain, out)) {
      return out;
    }
    if (yield()) return out;
  }
  return out;
}

}  // namespace fuce
