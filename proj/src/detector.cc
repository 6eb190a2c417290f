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

#include "fuce/detector.h"

#include <algorithm>

#include "json.hpp"

namespace fuce {

GoldenModel GoldenModel::FromDesign(Design reference) {
  GoldenModel g;
  g.design_ = std::move(reference);
  return g;
}

GoldenModel GoldenModel::FromTable(
    std::map<std::vector<Word>, OutputTrace> table) {
  GoldenModel g;
  g.table_ = std::move(table);
  return g;
}

GoldenModel GoldenModel::FromTableJson(std::string_view json) {
  auto doc = nlohmann::json::parse(json);
  std::map<std::vector<Word>, OutputTrace> table;
  for (const auto& e : doc.at("entries")) {
    OutputTrace out;
    out.values = e.at("output").get<std::vector<Word>>();
    table[e.at("input").get<std::vector<Word>>()] = std::move(out);
  }
  return FromTable(std::move(table));
}

std::optional<ExecutionTrace> GoldenModel::Run(std::span<const Word> words,
                                               uint64_t step_limit) const {
  if (design_) return Execute(*design_, words, step_limit);
  auto it = table_.find(std::vector<Word>(words.begin(), words.end()));
  if (it == table_.end()) return std::nullopt;
  ExecutionTrace t;
  t.outputs = it->second;
  return t;
}

DetectionVerdict CompareTraces(const ExecutionTrace& dut,
                               const ExecutionTrace& golden) {
  const auto& a = dut.outputs.values;
  const auto& b = golden.outputs.values;
  bool both_cut = dut.fault == RuntimeFault::kStepLimitExceeded &&
                  golden.fault == RuntimeFault::kStepLimitExceeded;
  size_t common = std::min(a.size(), b.size());
  auto mismatch = std::mismatch(a.begin(), a.begin() + common, b.begin());
  size_t index = static_cast<size_t>(mismatch.first - a.begin());

  bool diverged = index < common;
  if (!diverged && !both_cut && a.size() != b.size()) diverged = true;
  if (!diverged && !both_cut && dut.fault && dut.fault != golden.fault) {
    diverged = true;
  }

  DetectionVerdict v;
  if (!diverged) return v;
  v.detected = true;
  Witness w;
  w.divergence_index = index;
  if (index < a.size()) w.dut_value = a[index];
  if (index < b.size()) w.golden_value = b[index];
  w.dut_trace = dut.outputs;
  w.golden_trace = golden.outputs;
  w.dut_fault = dut.fault;
  w.golden_fault = golden.fault;
  v.witness = std::move(w);
  return v;
}

DetectionVerdict CheckTrace(const ExecutionTrace& dut_trace,
                            const GoldenModel& golden,
                            std::span<const Word> words, uint64_t step_limit,
                            std::optional<uint64_t> test_id) {
  auto ref = golden.Run(words, step_limit);
  if (!ref) {
    DetectionVerdict v;
    v.golden_unavailable = true;
    return v;
  }
  DetectionVerdict v = CompareTraces(dut_trace, *ref);
  if (v.witness) {
    v.witness->test_id = test_id;
    v.witness->test.assign(words.begin(), words.end());
  }
  return v;
}

DetectionVerdict Check(const Design& dut, const GoldenModel& golden,
                       std::span<const Word> words, uint64_t step_limit,
                       std::optional<uint64_t> test_id) {
  return CheckTrace(Execute(dut, words, step_limit), golden, words,
                    step_limit, test_id);
}

}  // namespace fuce
