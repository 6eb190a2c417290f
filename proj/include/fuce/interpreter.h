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

// Tree-walking interpreter for designs, parameterized over the value domain.
//
// The control-flow driver is shared by the concrete executor (Value = Word)
// and the concolic shadow executor (Value = concrete word + symbolic term), so
// both follow exactly the same decision sequence for the same input.
//
// A Machine provides:
//   using Value = ...;
//   Value Const(Word);
//   Value Input(uint32_t word_index, Word concrete);
//   Value Unary(Op, const Value&);
//   Value Binary(Op, const Value&, const Value&);   // divisor is non-zero
//   Word Concrete(const Value&);
//   void OnDivisor(const Value& divisor);            // before a div/mod
//   void OnDecision(BranchId, uint32_t occurrence, Polarity, const Value&);
#ifndef FUCE_INTERPRETER_H_
#define FUCE_INTERPRETER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fuce/dsl.h"

namespace fuce {

enum class RuntimeFault : uint8_t { kDivByZero, kStepLimitExceeded };

inline const char* FaultName(RuntimeFault f) {
  return f == RuntimeFault::kDivByZero ? "DivByZero" : "StepLimitExceeded";
}

// Concrete semantics of every operator; shared with symbolic evaluation.
// Division and modulo by zero are the caller's responsibility.
inline Word ApplyBinary(Op op, Word a, Word b) {
  switch (op) {
    case Op::kAdd: return a + b;
    case Op::kSub: return a - b;
    case Op::kMul: return a * b;
    case Op::kDiv: return a / b;
    case Op::kMod: return a % b;
    case Op::kAnd: return a & b;
    case Op::kOr: return a | b;
    case Op::kXor: return a ^ b;
    case Op::kShl: return b >= 32 ? 0 : a << b;
    case Op::kShr: return b >= 32 ? 0 : a >> b;
    case Op::kEq: return a == b;
    case Op::kNe: return a != b;
    case Op::kLt: return a < b;
    case Op::kLe: return a <= b;
    case Op::kGt: return a > b;
    case Op::kGe: return a >= b;
    case Op::kLogicalAnd: return (a != 0) && (b != 0);
    case Op::kLogicalOr: return (a != 0) || (b != 0);
    default: return 0;
  }
}

inline Word ApplyUnary(Op op, Word a) {
  switch (op) {
    case Op::kLogicalNot: return a == 0;
    case Op::kNeg: return Word{0} - a;
    case Op::kBitNot: return ~a;
    default: return a;
  }
}

template <typename Machine>
class Interpreter {
 public:
  using Value = typename Machine::Value;

  Interpreter(const Design& design, std::span<const Word> words,
              uint64_t step_limit, Machine& machine)
      : design_(design),
        words_(words),
        step_limit_(step_limit),
        machine_(machine),
        vars_(design.variables.size(), machine.Const(0)),
        occurrences_(design.branch_count, 0) {}

  void Run() { (void)ExecBody(design_.body); }

  const std::vector<Word>& outputs() const { return outputs_; }
  uint64_t steps_used() const { return steps_; }
  std::optional<RuntimeFault> fault() const { return fault_; }
  bool input_exhausted() const { return input_exhausted_; }

 private:
  enum class Flow { kNormal, kStop };

  bool Step() {
    if (++steps_ > step_limit_) {
      steps_ = step_limit_;
      fault_ = RuntimeFault::kStepLimitExceeded;
      return false;
    }
    return true;
  }

  // Returns nullopt on a runtime fault (recorded in fault_).
  std::optional<Value> Eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kConst:
        return machine_.Const(e.value);
      case ExprKind::kVar:
        return vars_[e.index];
      case ExprKind::kInputSlot:
        return ReadWord(e.index);
      case ExprKind::kNextInput:
        return ReadWord(design_.input_arity + next_ordinal_++);
      case ExprKind::kUnary: {
        auto v = Eval(*e.lhs);
        if (!v) return std::nullopt;
        return machine_.Unary(e.op, *v);
      }
      case ExprKind::kBinary: {
        auto a = Eval(*e.lhs);
        if (!a) return std::nullopt;
        auto b = Eval(*e.rhs);
        if (!b) return std::nullopt;
        if (e.op == Op::kDiv || e.op == Op::kMod) {
          if (machine_.Concrete(*b) == 0) {
            fault_ = RuntimeFault::kDivByZero;
            return std::nullopt;
          }
          machine_.OnDivisor(*b);
        }
        return machine_.Binary(e.op, *a, *b);
      }
    }
    return std::nullopt;
  }

  Value ReadWord(uint32_t index) {
    Word concrete = 0;
    if (index < words_.size()) {
      concrete = words_[index];
    } else {
      input_exhausted_ = true;
    }
    return machine_.Input(index, concrete);
  }

  // Evaluates a branch condition and reports the decision.
  std::optional<bool> Decide(const Stmt& s) {
    auto cond = Eval(*s.expr);
    if (!cond) return std::nullopt;
    bool taken = machine_.Concrete(*cond) != 0;
    machine_.OnDecision(s.branch, occurrences_[s.branch]++, ToPolarity(taken),
                        *cond);
    return taken;
  }

  Flow ExecBody(const std::vector<Stmt>& body) {
    for (const Stmt& s : body) {
      if (ExecStmt(s) == Flow::kStop) return Flow::kStop;
    }
    return Flow::kNormal;
  }

  Flow ExecStmt(const Stmt& s) {
    if (!Step()) return Flow::kStop;
    switch (s.kind) {
      case StmtKind::kAssign: {
        auto v = Eval(*s.expr);
        if (!v) return Flow::kStop;
        vars_[s.var] = std::move(*v);
        return Flow::kNormal;
      }
      case StmtKind::kOutput: {
        auto v = Eval(*s.expr);
        if (!v) return Flow::kStop;
        outputs_.push_back(machine_.Concrete(*v));
        return Flow::kNormal;
      }
      case StmtKind::kHalt:
        return Flow::kStop;
      case StmtKind::kIf: {
        auto taken = Decide(s);
        if (!taken) return Flow::kStop;
        return ExecBody(*taken ? s.then_body : s.else_body);
      }
      case StmtKind::kWhile: {
        while (true) {
          auto taken = Decide(s);
          if (!taken) return Flow::kStop;
          if (!*taken) return Flow::kNormal;
          if (ExecBody(s.then_body) == Flow::kStop) return Flow::kStop;
          // Each further evaluation of the loop condition costs a step.
          if (!Step()) return Flow::kStop;
        }
      }
    }
    return Flow::kNormal;
  }

  const Design& design_;
  std::span<const Word> words_;
  uint64_t step_limit_;
  Machine& machine_;
  std::vector<Value> vars_;
  std::vector<uint32_t> occurrences_;
  std::vector<Word> outputs_;
  uint64_t steps_ = 0;
  uint32_t next_ordinal_ = 0;
  std::optional<RuntimeFault> fault_;
  bool input_exhausted_ = false;
};

}  // namespace fuce

#endif  // FUCE_INTERPRETER_H_
