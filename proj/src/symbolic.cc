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

#include "fuce/symbolic.h"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "fuce/interpreter.h"

namespace fuce {
namespace {

bool Commutative(Op op) {
  switch (op) {
    case Op::kAdd:
    case Op::kMul:
    case Op::kAnd:
    case Op::kOr:
    case Op::kXor:
    case Op::kEq:
    case Op::kNe:
    case Op::kLogicalAnd:
    case Op::kLogicalOr:
      return true;
    default:
      return false;
  }
}

SymRef MakeBinary(Op op, SymRef a, SymRef b) {
  auto n = std::make_shared<SymNode>();
  n->kind = SymKind::kBinary;
  n->op = op;
  n->depth = 1 + std::max(a->depth, b->depth);
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

// Visits every distinct node reachable from `root` in post-order without
// recursion.
// Nodes for which `skip` holds are neither visited nor descended into.
template <typename F, typename S>
void PostOrder(const SymRef& root, F&& visit, S&& skip) {
  std::unordered_set<const SymNode*> done;
  std::vector<std::pair<const SymNode*, bool>> stack;
  stack.emplace_back(root.get(), false);
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (done.contains(n) || skip(n)) continue;
    if (expanded) {
      done.insert(n);
      visit(n);
      continue;
    }
    stack.emplace_back(n, true);
    if (n->rhs && !done.contains(n->rhs.get())) {
      stack.emplace_back(n->rhs.get(), false);
    }
    if (n->lhs && !done.contains(n->lhs.get())) {
      stack.emplace_back(n->lhs.get(), false);
    }
  }
}

template <typename F>
void PostOrder(const SymRef& root, F&& visit) {
  PostOrder(root, std::forward<F>(visit), [](const SymNode*) { return false; });
}

}  // namespace

SymRef SymConst(Word value) {
  auto n = std::make_shared<SymNode>();
  n->kind = SymKind::kConst;
  n->value = value;
  return n;
}

SymRef SymInput(uint32_t word_index) {
  auto n = std::make_shared<SymNode>();
  n->kind = SymKind::kInput;
  n->input = word_index;
  return n;
}

SymRef SymUnary(Op op, SymRef a) {
  if (IsConst(a)) return SymConst(ApplyUnary(op, a->value));
  // Double negation / complement cancel.
  if (a->kind == SymKind::kUnary && a->op == op &&
      (op == Op::kNeg || op == Op::kBitNot)) {
    return a->lhs;
  }
  auto n = std::make_shared<SymNode>();
  n->kind = SymKind::kUnary;
  n->op = op;
  n->depth = 1 + a->depth;
  n->lhs = std::move(a);
  return n;
}

SymRef SymBinary(Op op, SymRef a, SymRef b) {
  if (IsConst(a) && IsConst(b)) {
    if ((op == Op::kDiv || op == Op::kMod) && b->value == 0) {
      return MakeBinary(op, std::move(a), std::move(b));
    }
    return SymConst(ApplyBinary(op, a->value, b->value));
  }
  if (Commutative(op) && IsConst(a)) std::swap(a, b);
  if (op == Op::kSub && IsConst(b)) {
    op = Op::kAdd;
    b = SymConst(Word{0} - b->value);
  }
  if (IsConst(b)) {
    Word c = b->value;
    switch (op) {
      case Op::kAdd:
      case Op::kXor:
      case Op::kOr:
      case Op::kShl:
      case Op::kShr:
        if (c == 0) return a;
        break;
      case Op::kMul:
        if (c == 1) return a;
        if (c == 0) return b;
        break;
      case Op::kAnd:
        if (c == 0) return b;
        if (c == 0xFFFFFFFFu) return a;
        break;
      case Op::kDiv:
        if (c == 1) return a;
        break;
      default:
        break;
    }
    // (x + c1) + c2 -> x + (c1 + c2); likewise for ^.
    if ((op == Op::kAdd || op == Op::kXor) && a->kind == SymKind::kBinary &&
        a->op == op && IsConst(a->rhs)) {
      Word folded = ApplyBinary(op, a->rhs->value, c);
      return SymBinary(op, a->lhs, SymConst(folded));
    }
  }
  return MakeBinary(op, std::move(a), std::move(b));
}

bool IsBooleanTerm(const SymRef& s) {
  switch (s->kind) {
    case SymKind::kConst:
      return s->value <= 1;
    case SymKind::kInput:
      return false;
    case SymKind::kUnary:
      return s->op == Op::kLogicalNot;
    case SymKind::kBinary:
      return IsComparison(s->op) || IsLogical(s->op);
  }
  return false;
}

std::optional<Word> EvaluateSym(const SymRef& s, std::span<const Word> words) {
  if (IsConst(s)) return s->value;
  SymProgram prog;
  uint32_t reg = prog.Add(s);
  std::vector<Word> regs;
  std::vector<uint8_t> poison;
  prog.Run(words, regs, poison);
  if (poison[reg]) return std::nullopt;
  return regs[reg];
}

void CollectInputs(const SymRef& s, std::set<uint32_t>& out) {
  PostOrder(s, [&](const SymNode* n) {
    if (n->kind == SymKind::kInput) out.insert(n->input);
  });
}

size_t SymSize(const SymRef& s) {
  size_t count = 0;
  PostOrder(s, [&](const SymNode*) { ++count; });
  return count;
}

namespace {

void Print(const SymNode& n, std::ostream& os, size_t max_len, size_t& used) {
  if (used > max_len) return;
  std::ostringstream tmp;
  switch (n.kind) {
    case SymKind::kConst:
      os << n.value;
      used += 4;
      return;
    case SymKind::kInput:
      os << "InputWord(" << n.input << ")";
      used += 12;
      return;
    case SymKind::kUnary:
      os << OpSymbol(n.op) << (n.op == Op::kLogicalNot ? " " : "") << "(";
      Print(*n.lhs, os, max_len, used);
      os << ")";
      used += 4;
      return;
    case SymKind::kBinary:
      os << "(";
      Print(*n.lhs, os, max_len, used);
      os << " " << OpSymbol(n.op) << " ";
      Print(*n.rhs, os, max_len, used);
      os << ")";
      used += 6;
      return;
  }
}

}  // namespace

std::string SymToString(const SymRef& s, size_t max_len) {
  std::ostringstream os;
  size_t used = 0;
  Print(*s, os, max_len, used);
  std::string out = os.str();
  if (used > max_len) out += "...";
  return out;
}

uint32_t SymProgram::Add(const SymRef& s) {
  if (auto it = index_.find(s.get()); it != index_.end()) return it->second;
  keep_alive_.push_back(s);
  auto indexed = [&](const SymNode* n) { return index_.contains(n); };
  PostOrder(s, [&](const SymNode* n) {
    Insn insn{n->kind, n->op, n->value, n->input, 0, 0};
    if (n->lhs) insn.a = index_.at(n->lhs.get());
    if (n->rhs) insn.b = index_.at(n->rhs.get());
    index_.emplace(n, static_cast<uint32_t>(insns_.size()));
    insns_.push_back(insn);
  }, indexed);
  return index_.at(s.get());
}

void SymProgram::Run(std::span<const Word> words, std::vector<Word>& regs,
                     std::vector<uint8_t>& poison) const {
  regs.resize(insns_.size());
  poison.resize(insns_.size());
  for (size_t i = 0; i < insns_.size(); ++i) {
    const Insn& in = insns_[i];
    switch (in.kind) {
      case SymKind::kConst:
        regs[i] = in.value;
        poison[i] = 0;
        break;
      case SymKind::kInput:
        regs[i] = in.input < words.size() ? words[in.input] : 0;
        poison[i] = 0;
        break;
      case SymKind::kUnary:
        regs[i] = ApplyUnary(in.op, regs[in.a]);
        poison[i] = poison[in.a];
        break;
      case SymKind::kBinary: {
        Word b = regs[in.b];
        poison[i] = poison[in.a] | poison[in.b];
        if ((in.op == Op::kDiv || in.op == Op::kMod) && b == 0) {
          poison[i] = 1;
          regs[i] = 0;
        } else {
          regs[i] = ApplyBinary(in.op, regs[in.a], b);
        }
        break;
      }
    }
  }
}

}  // namespace fuce
