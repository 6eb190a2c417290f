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

// Symbolic terms over input words, with DSL (wrapping 32-bit) semantics.
//
// Terms are immutable hash-free DAGs built through the folding constructors
// below; leaves are constants or input symbols. An input symbol is the index
// of a word in the test vector: in[k] is word k and the n-th next_input() is
// word input_arity + n.
#ifndef FUCE_SYMBOLIC_H_
#define FUCE_SYMBOLIC_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fuce/dsl.h"

namespace fuce {

enum class SymKind : uint8_t { kConst, kInput, kUnary, kBinary };

struct SymNode;
using SymRef = std::shared_ptr<const SymNode>;

struct SymNode {
  SymKind kind = SymKind::kConst;
  Op op = Op::kAdd;
  Word value = 0;      // kConst
  uint32_t input = 0;  // kInput
  uint32_t depth = 0;  // longest path to a leaf
  SymRef lhs;
  SymRef rhs;
};

SymRef SymConst(Word value);
SymRef SymInput(uint32_t word_index);
SymRef SymUnary(Op op, SymRef a);
SymRef SymBinary(Op op, SymRef a, SymRef b);

inline bool IsConst(const SymRef& s) { return s->kind == SymKind::kConst; }
bool IsBooleanTerm(const SymRef& s);

// Concrete value of `s` under `words` (missing words read as 0). Returns
// nullopt when a division or modulo by zero occurs.
std::optional<Word> EvaluateSym(const SymRef& s, std::span<const Word> words);

void CollectInputs(const SymRef& s, std::set<uint32_t>& out);
size_t SymSize(const SymRef& s);  // distinct nodes
std::string SymToString(const SymRef& s, size_t max_len = 4096);

// Straight-line compilation of a set of terms: each distinct node is one
// register, evaluated in topological order. Division by zero poisons the
// register and everything depending on it.
class SymProgram {
 public:
  struct Insn {
    SymKind kind;
    Op op;
    Word value;      // kConst
    uint32_t input;  // kInput
    uint32_t a;      // operand registers
    uint32_t b;
  };

  // Returns the register holding `s`.
  uint32_t Add(const SymRef& s);

  size_t size() const { return insns_.size(); }
  // Register of a node previously added (directly or as a subterm).
  uint32_t RegOf(const SymNode* n) const { return index_.at(n); }
  const std::vector<Insn>& insns() const { return insns_; }

  // Fills `regs`/`poison` (resized as needed).
  void Run(std::span<const Word> words, std::vector<Word>& regs,
           std::vector<uint8_t>& poison) const;

 private:
  std::vector<Insn> insns_;
  std::unordered_map<const SymNode*, uint32_t> index_;
  std::vector<SymRef> keep_alive_;
};

}  // namespace fuce

#endif  // FUCE_SYMBOLIC_H_
