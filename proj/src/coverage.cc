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

#include "fuce/coverage.h"

#include <algorithm>
#include <bit>

namespace fuce {

int BucketOf(uint64_t hits) {
  if (hits <= 3) return hits == 0 ? 0 : static_cast<int>(hits) - 1;
  if (hits <= 7) return 3;
  if (hits <= 15) return 4;
  if (hits <= 31) return 5;
  if (hits <= 127) return 6;
  return 7;
}

CoverageDelta CoverageOf(const ExecutionTrace& trace) {
  CoverageDelta delta;
  if (trace.decisions.empty()) return delta;

  std::vector<PairKey> keys;
  std::vector<uint32_t> edges;
  keys.reserve(trace.decisions.size());
  edges.reserve(trace.decisions.size());
  uint32_t prev = kEntryEdge;
  for (const Decision& d : trace.decisions) {
    uint32_t cur = d.edge().Index();
    keys.push_back(MakePairKey(prev, cur));
    edges.push_back(cur);
    prev = cur;
  }
  std::sort(keys.begin(), keys.end());
  std::sort(edges.begin(), edges.end());

  for (size_t i = 0; i < keys.size();) {
    size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    uint32_t count = static_cast<uint32_t>(j - i);
    delta.pairs.push_back({keys[i], count, BucketOf(count)});
    i = j;
  }
  for (size_t i = 0; i < edges.size();) {
    size_t j = i;
    while (j < edges.size() && edges[j] == edges[i]) ++j;
    delta.edges.emplace_back(edges[i], static_cast<uint32_t>(j - i));
    i = j;
  }
  return delta;
}

bool CoverageMap::Merge(const CoverageDelta& delta) {
  bool novel = false;
  for (const PairHit& hit : delta.pairs) {
    uint8_t bit = static_cast<uint8_t>(1u << hit.bucket);
    uint8_t& set = buckets_[hit.key];
    if ((set & bit) == 0) {
      set |= bit;
      novel = true;
    }
  }
  for (const auto& [edge, hits] : delta.edges) {
    if (edge >= edge_hits_.size()) edge_hits_.resize(edge + 1, 0);
    if (edge_hits_[edge] == 0) ++covered_edges_;
    edge_hits_[edge] += hits;
  }
  return novel;
}

uint8_t CoverageMap::BucketsOf(PairKey key) const {
  auto it = buckets_.find(key);
  return it == buckets_.end() ? 0 : it->second;
}

size_t CoverageMap::bucket_bits() const {
  size_t n = 0;
  for (const auto& [key, set] : buckets_) n += std::popcount(set);
  return n;
}

double CoveragePct(size_t covered, size_t total) {
  if (total == 0) return 100.0;
  return 100.0 * static_cast<double>(covered) / static_cast<double>(total);
}

double CoverageMap::BranchCoveragePct() const {
  return CoveragePct(covered_edges_, edge_hits_.size());
}

}  // namespace fuce
