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

#include "fuce/executor.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fuce/corpus.h"
#include "fuce/coverage.h"
#include "generators.h"

namespace fuce {
namespace {

Decision D(BranchId b, bool taken, uint32_t occ = 0) {
  return {b, ToPolarity(taken), occ};
}

ExecutionTrace TraceOf(std::vector<Decision> decisions) {
  ExecutionTrace t;
  t.decisions = std::move(decisions);
  return t;
}

// Reference bucket table, written out per class boundary.
int ReferenceBucket(uint64_t hits) {
  const uint64_t upper[] = {1, 2, 3, 7, 15, 31, 127};
  for (int i = 0; i < 7; ++i) {
    if (hits <= upper[i]) return i;
  }
  return 7;
}

TEST(Executor, MotivatingGuardTakenOnMagicStates) {
  const BenchmarkEntry e = std::move(BuiltinSuite().front());
  ExecutionTrace t = Execute(e.dut, std::vector<Word>{23978, 5678, 3, 1, 2});
  ASSERT_FALSE(t.decisions.empty());
  EXPECT_EQ(t.decisions[0].branch, 0u);
  EXPECT_EQ(t.decisions[0].polarity, Polarity::kTrue);
}

TEST(Executor, InfiniteLoopHitsStepLimit) {
  Design d = ParseDesign("design d { inputs 0; while (true) { x = 1; } }");
  ExecutionTrace t = Execute(d, std::vector<Word>{}, 1);
  ASSERT_TRUE(t.fault.has_value());
  EXPECT_EQ(*t.fault, RuntimeFault::kStepLimitExceeded);
}

TEST(Executor, EchoDesign) {
  Design d = ParseDesign("design echo { inputs 1; output(in[0]); }");
  ExecutionTrace t = Execute(d, std::vector<Word>{7});
  EXPECT_EQ(t.outputs.values, std::vector<Word>{7});
  EXPECT_FALSE(t.fault.has_value());
}

TEST(Executor, WrappingArithmeticAndShifts) {
  Design d = ParseDesign(R"(design d {
    inputs 1;
    output(in[0] + 1);
    output(0 - 1);
    output(in[0] * 2);
    output(1 << 32);
    output(1 << 31);
    output(7 >> 40);
    output(~0);
  })");
  ExecutionTrace t = Execute(d, std::vector<Word>{0xFFFFFFFFu});
  EXPECT_EQ(t.outputs.values,
            (std::vector<Word>{0, 0xFFFFFFFFu, 0xFFFFFFFEu, 0, 0x80000000u, 0,
                               0xFFFFFFFFu}));
}

TEST(Executor, DivisionByZeroIsFault) {
  Design d = ParseDesign(
      "design d { inputs 1; output(1); output(10 / in[0]); output(2); }");
  ExecutionTrace t = Execute(d, std::vector<Word>{0});
  ASSERT_TRUE(t.fault.has_value());
  EXPECT_EQ(*t.fault, RuntimeFault::kDivByZero);
  EXPECT_EQ(t.outputs.values, std::vector<Word>{1});
  EXPECT_EQ(Execute(d, std::vector<Word>{5}).outputs.values,
            (std::vector<Word>{1, 2, 2}));
}

TEST(Executor, ExhaustedInputReadsZero) {
  Design d = ParseDesign(
      "design d { inputs 1; output(next_input()); output(next_input()); }");
  ExecutionTrace t = Execute(d, std::vector<Word>{4, 9});
  EXPECT_EQ(t.outputs.values, (std::vector<Word>{9, 0}));
  EXPECT_TRUE(t.input_exhausted);
  EXPECT_FALSE(Execute(d, std::vector<Word>{4, 9, 1}).input_exhausted);
}

TEST(Executor, LogicalOperatorsDoNotShortCircuit) {
  // The right operand still divides by zero.
  Design d = ParseDesign(
      "design d { inputs 1; if (false and 1 / in[0] == 1) { output(1); } }");
  EXPECT_EQ(Execute(d, std::vector<Word>{0}).fault, RuntimeFault::kDivByZero);
}

TEST(Executor, OccurrencesCountPerBranch) {
  Design d = ParseDesign(
      "design d { inputs 1; i = 0; while (i < in[0]) { i = i + 1; } }");
  ExecutionTrace t = Execute(d, std::vector<Word>{3});
  ASSERT_EQ(t.decisions.size(), 4u);
  for (uint32_t k = 0; k < 4; ++k) {
    EXPECT_EQ(t.decisions[k].occurrence, k);
    EXPECT_EQ(t.decisions[k].polarity, ToPolarity(k < 3));
  }
}

TEST(Coverage, BucketTable) {
  for (uint64_t h = 1; h < 400; ++h) EXPECT_EQ(BucketOf(h), ReferenceBucket(h));
}

TEST(Coverage, PairsFromEntryEdge) {
  CoverageDelta d = CoverageOf(TraceOf({D(0, true), D(1, false)}));
  ASSERT_EQ(d.pairs.size(), 2u);
  // b0T = edge 1, b1F = edge 2
  std::vector<PairKey> keys = {d.pairs[0].key, d.pairs[1].key};
  std::sort(keys.begin(), keys.end());
  std::vector<PairKey> want = {MakePairKey(1, 2), MakePairKey(kEntryEdge, 1)};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(keys, want);
  for (const PairHit& p : d.pairs) {
    EXPECT_EQ(p.count, 1u);
    EXPECT_EQ(p.bucket, 0);
  }
}

TEST(Coverage, EmptyTraceEmptyDelta) {
  EXPECT_TRUE(CoverageOf(TraceOf({})).empty());
}

TEST(Coverage, FiveConsecutiveTrueEdgesLandInFourToSeven) {
  std::vector<Decision> ds;
  for (uint32_t i = 0; i < 5; ++i) ds.push_back(D(1, true, i));
  CoverageDelta d = CoverageOf(TraceOf(ds));
  const PairHit* loop = nullptr;
  for (const PairHit& p : d.pairs) {
    if (p.key == MakePairKey(3, 3)) loop = &p;
  }
  ASSERT_NE(loop, nullptr);
  EXPECT_EQ(loop->count, 4u);
  EXPECT_EQ(loop->bucket, 3);
}

TEST(Coverage, MergeNovelty) {
  CoverageMap m(2);
  CoverageDelta d = CoverageOf(TraceOf({D(0, true), D(1, false)}));
  EXPECT_TRUE(m.Merge(d));
  EXPECT_FALSE(m.Merge(d));

  // Same key, new bucket.
  std::vector<Decision> one = {D(1, true), D(1, true)};
  std::vector<Decision> five;
  for (uint32_t i = 0; i < 6; ++i) five.push_back(D(1, true, i));
  EXPECT_TRUE(m.Merge(CoverageOf(TraceOf(one))));
  EXPECT_TRUE(m.Merge(CoverageOf(TraceOf(five))));
  EXPECT_FALSE(m.Merge(CoverageOf(TraceOf(five))));
  EXPECT_EQ(m.covered_edges(), 3u);
  EXPECT_DOUBLE_EQ(m.BranchCoveragePct(), 75.0);
}

TEST(Coverage, ZeroEdgeDesignIsFullyCovered) {
  EXPECT_DOUBLE_EQ(CoverageMap(0).BranchCoveragePct(), 100.0);
}

TEST(ExecutorProperty, DeterminismPairingMonotonicityReplay) {
  testing::DesignGenerator gen(11);
  for (int i = 0; i < 300; ++i) {
    Design d = ParseDesign(gen.Source());
    CoverageMap global(d.branch_count);
    size_t prev_covered = 0, prev_bits = 0;
    for (int k = 0; k < 5; ++k) {
      std::vector<Word> in = gen.Input();
      ExecutionTrace a = Execute(d, in, 5000);
      ASSERT_EQ(a, Execute(d, in, 5000));
      CoverageDelta delta = CoverageOf(a);
      uint64_t hits = 0;
      for (const PairHit& p : delta.pairs) hits += p.count;
      ASSERT_EQ(hits, a.decisions.size());
      global.Merge(delta);
      ASSERT_FALSE(global.Merge(delta));
      ASSERT_GE(global.covered_edges(), prev_covered);
      ASSERT_GE(global.bucket_bits(), prev_bits);
      prev_covered = global.covered_edges();
      prev_bits = global.bucket_bits();
    }
  }
}

}  // namespace
}  // namespace fuce
