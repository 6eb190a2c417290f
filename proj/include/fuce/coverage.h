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

// Branch-pair coverage with AFL-style hit-count buckets.
//
// A branch-pair key is (previous resolved edge, current resolved edge); the
// first decision of a run pairs with a synthetic entry edge. Per run, each
// key's hit count is mapped to one of eight buckets
// {1, 2, 3, 4-7, 8-15, 16-31, 32-127, 128+}. An input is novel iff it
// touches a (key, bucket) combination not seen before.
#ifndef FUCE_COVERAGE_H_
#define FUCE_COVERAGE_H_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fuce/dsl.h"
#include "fuce/executor.h"

namespace fuce {

inline constexpr uint32_t kEntryEdge = 0xFFFFFFFFu;

using PairKey = uint64_t;

inline PairKey MakePairKey(uint32_t prev_edge, uint32_t cur_edge) {
  return (static_cast<uint64_t>(prev_edge) << 32) | cur_edge;
}
inline uint32_t PairPrev(PairKey k) { return static_cast<uint32_t>(k >> 32); }
inline uint32_t PairCur(PairKey k) { return static_cast<uint32_t>(k); }

// Bucket index in [0, 8) for a run-local hit count >= 1.
int BucketOf(uint64_t hits);

struct PairHit {
  PairKey key = 0;
  uint32_t count = 0;  // run-local hits
  int bucket = 0;
};

struct CoverageDelta {
  std::vector<PairHit> pairs;  // sorted by key
  // (edge index, run-local hits), sorted by edge index.
  std::vector<std::pair<uint32_t, uint32_t>> edges;

  bool empty() const { return pairs.empty(); }
};

CoverageDelta CoverageOf(const ExecutionTrace& trace);

class CoverageMap {
 public:
  CoverageMap() = default;
  explicit CoverageMap(uint32_t branch_count)
      : edge_hits_(static_cast<size_t>(branch_count) * 2, 0) {}

  // Applies `delta`; returns true iff some (key, bucket) pair is new.
  bool Merge(const CoverageDelta& delta);

  uint8_t BucketsOf(PairKey key) const;
  size_t key_count() const { return buckets_.size(); }
  size_t bucket_bits() const;
  uint64_t EdgeHits(uint32_t edge_index) const {
    return edge_index < edge_hits_.size() ? edge_hits_[edge_index] : 0;
  }
  bool Covered(const BranchEdge& edge) const {
    return EdgeHits(edge.Index()) > 0;
  }
  size_t covered_edges() const { return covered_edges_; }
  size_t total_edges() const { return edge_hits_.size(); }

  // Covered edges / all edges * 100; 100 for designs without branches.
  double BranchCoveragePct() const;

 private:
  std::unordered_map<PairKey, uint8_t> buckets_;
  std::vector<uint64_t> edge_hits_;
  size_t covered_edges_ = 0;
};

// Coverage percentage helper shared with report recomputation.
double CoveragePct(size_t covered, size_t total);

}  // namespace fuce

#endif  // FUCE_COVERAGE_H_
