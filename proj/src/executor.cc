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

namespace fuce {
namespace {

struct ConcreteMachine {
  using Value = Word;

  explicit ConcreteMachine(std::vector<Decision>& decisions)
      : decisions(decisions) {}

  Value Const(Word w) const { return w; }
  Value Input(uint32_t, Word concrete) const { return concrete; }
  Value Unary(Op op, Value a) const { return ApplyUnary(op, a); }
  Value Binary(Op op, Value a, Value b) const { return ApplyBinary(op, a, b); }
  Word Concrete(Value v) const { return v; }
  void OnDivisor(Value) const {}
  void OnDecision(BranchId branch, uint32_t occurrence, Polarity p, Value) {
    decisions.push_back({branch, p, occurrence});
  }

  std::vector<Decision>& decisions;
};

}  // namespace

ExecutionTrace Execute(const Design& design, std::span<const Word> words,
                       uint64_t step_limit) {
  ExecutionTrace trace;
  ConcreteMachine machine(trace.decisions);
  Interpreter<ConcreteMachine> interp(design, words, step_limit, machine);
  interp.Run();
  trace.outputs.values = interp.outputs();
  trace.steps_used = interp.steps_used();
  trace.fault = interp.fault();
  trace.input_exhausted = interp.input_exhausted();
  return trace;
}

std::string_view OriginName(Origin origin) {
  switch (origin) {
    case Origin::kSeed: return "seed";
    case Origin::kFuzzDeterministic: return "fuzz-deterministic";
    case Origin::kFuzzHavoc: return "fuzz-havoc";
    case Origin::kConcolic: return "concolic";
  }
  return "seed";
}

std::optional<Origin> ParseOrigin(std::string_view name) {
  for (Origin o : {Origin::kSeed, Origin::kFuzzDeterministic,
                   Origin::kFuzzHavoc, Origin::kConcolic}) {
    if (OriginName(o) == name) return o;
  }
  return std::nullopt;
}

}  // namespace fuce
