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

// Design description language: AST, parser and pretty-printer.
//
// A design is a single imperative body over unsigned 32-bit words:
//
//   design <name> { inputs <n>; <stmt>* }
//
// Every `if` and `while` owns a BranchId assigned in pre-order, which is the
// unit of coverage instrumentation for the rest of the engine.
#ifndef FUCE_DSL_H_
#define FUCE_DSL_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fuce {

using Word = uint32_t;
using BranchId = uint32_t;

enum class Polarity : uint8_t { kFalse = 0, kTrue = 1 };

inline Polarity Flip(Polarity p) {
  return p == Polarity::kTrue ? Polarity::kFalse : Polarity::kTrue;
}
inline Polarity ToPolarity(bool b) {
  return b ? Polarity::kTrue : Polarity::kFalse;
}

enum class ExprKind : uint8_t {
  kConst,
  kVar,
  kInputSlot,  // in[k]
  kNextInput,  // next_input()
  kUnary,
  kBinary,
};

// Arithmetic and bitwise operators wrap modulo 2^32. Comparison and logical
// operators yield 0 or 1. Shifts by 32 or more yield 0.
enum class Op : uint8_t {
  // binary arithmetic / bitwise
  kAdd,
  kSub,
  kMul,
  kDiv,
  kMod,
  kAnd,
  kOr,
  kXor,
  kShl,
  kShr,
  // comparisons (unsigned)
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  // logical
  kLogicalAnd,
  kLogicalOr,
  // unary
  kLogicalNot,
  kNeg,
  kBitNot,
};

bool IsComparison(Op op);
bool IsLogical(Op op);
std::string_view OpSymbol(Op op);

struct Expr {
  ExprKind kind = ExprKind::kConst;
  Op op = Op::kAdd;
  Word value = 0;       // kConst
  uint32_t index = 0;   // variable slot for kVar, input slot for kInputSlot
  std::unique_ptr<Expr> lhs;  // operand of kUnary, left of kBinary
  std::unique_ptr<Expr> rhs;

  // True when the expression is a comparison/logical root (or a boolean
  // literal), i.e. legal as a branch condition.
  bool is_boolean = false;

  std::unique_ptr<Expr> Clone() const;
};

enum class StmtKind : uint8_t { kAssign, kIf, kWhile, kOutput, kHalt };

struct Stmt {
  StmtKind kind = StmtKind::kHalt;
  uint32_t var = 0;        // kAssign target slot
  BranchId branch = 0;     // kIf, kWhile
  std::unique_ptr<Expr> expr;  // assigned value, condition, or output value
  std::vector<Stmt> then_body;  // kIf then-branch, kWhile body
  std::vector<Stmt> else_body;  // kIf else-branch
};

struct DesignParams {
  // Integer literals in source order, deduplicated; feeds the fuzzer's
  // design-aware interesting-value table.
  std::vector<Word> literals;
};

struct Design {
  std::string name;
  DesignParams params;
  std::vector<Stmt> body;
  uint32_t branch_count = 0;
  uint32_t input_arity = 0;
  std::vector<std::string> variables;  // slot -> name
};

struct BranchEdge {
  BranchId branch = 0;
  Polarity polarity = Polarity::kFalse;

  // Dense id in [0, 2 * branch_count).
  uint32_t Index() const { return branch * 2 + static_cast<uint32_t>(polarity); }
  static BranchEdge FromIndex(uint32_t index) {
    return {index / 2, static_cast<Polarity>(index % 2)};
  }
  friend bool operator==(const BranchEdge&, const BranchEdge&) = default;
  friend auto operator<=>(const BranchEdge& a, const BranchEdge& b) {
    return a.Index() <=> b.Index();
  }
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses and validates `source`. Ternary `c ? a : b` is desugared into
// if/else statements (each receiving a BranchId) over a fresh temporary.
Design ParseDesign(std::string_view source);

// Canonical source text. PrintDesign(ParseDesign(PrintDesign(d))) ==
// PrintDesign(d).
std::string PrintDesign(const Design& design);
std::string PrintExpr(const Design& design, const Expr& expr);

// Deep copy; Design owns its expression trees.
Design CloneDesign(const Design& design);

// All 2 * branch_count edges ordered by (branch, polarity).
std::vector<BranchEdge> AllEdges(const Design& design);

std::string EdgeName(const BranchEdge& edge);

}  // namespace fuce

#endif  // FUCE_DSL_H_
