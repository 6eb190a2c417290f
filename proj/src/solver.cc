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

#include "fuce/solver.h"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

#include "fuce/interpreter.h"

namespace fuce {
namespace {

constexpr uint64_t kBig = uint64_t{1} << 34;
constexpr Word kMax = 0xFFFFFFFFu;

Op NegateCmp(Op op) {
  switch (op) {
    case Op::kEq: return Op::kNe;
    case Op::kNe: return Op::kEq;
    case Op::kLt: return Op::kGe;
    case Op::kLe: return Op::kGt;
    case Op::kGt: return Op::kLe;
    case Op::kGe: return Op::kLt;
    default: return op;
  }
}

// a op b  <=>  b Mirror(op) a
Op MirrorCmp(Op op) {
  switch (op) {
    case Op::kLt: return Op::kGt;
    case Op::kLe: return Op::kGe;
    case Op::kGt: return Op::kLt;
    case Op::kGe: return Op::kLe;
    default: return op;
  }
}

uint64_t CmpDistance(Op op, Word a, Word b) {
  uint64_t x = a, y = b;
  switch (op) {
    case Op::kEq: return x > y ? x - y : y - x;
    case Op::kNe: return x != y ? 0 : 1;
    case Op::kLt: return x < y ? 0 : x - y + 1;
    case Op::kLe: return x <= y ? 0 : x - y;
    case Op::kGt: return x > y ? 0 : y - x + 1;
    case Op::kGe: return x >= y ? 0 : y - x;
    default: return 0;
  }
}

Word OddInverse(Word c) {
  Word x = c;  // correct to 3 bits; each step doubles
  for (int i = 0; i < 5; ++i) x *= 2 - c * x;
  return x;
}

struct Interval {
  Word lo = 0;
  Word hi = kMax;
  bool empty() const { return lo > hi; }
  bool point() const { return lo == hi; }
  uint64_t width() const { return empty() ? 0 : uint64_t{hi} - lo + 1; }
  bool always_true() const { return lo > 0; }
  bool always_false() const { return hi == 0; }
};

Interval Point(Word v) { return {v, v}; }
Interval Bool(bool can_false, bool can_true) {
  return {can_false ? Word{0} : Word{1}, can_true ? Word{1} : Word{0}};
}

Word PowBound(Word v) {
  // smallest 2^k - 1 >= v
  Word m = v;
  m |= m >> 1;
  m |= m >> 2;
  m |= m >> 4;
  m |= m >> 8;
  m |= m >> 16;
  return m;
}

Interval CmpInterval(Op op, Interval a, Interval b) {
  switch (op) {
    case Op::kEq:
      if (a.point() && b.point()) return Point(a.lo == b.lo);
      if (a.hi < b.lo || b.hi < a.lo) return Point(0);
      return Bool(true, true);
    case Op::kNe:
      if (a.point() && b.point()) return Point(a.lo != b.lo);
      if (a.hi < b.lo || b.hi < a.lo) return Point(1);
      return Bool(true, true);
    case Op::kLt:
      if (a.hi < b.lo) return Point(1);
      if (a.lo >= b.hi) return Point(0);
      return Bool(true, true);
    case Op::kLe:
      if (a.hi <= b.lo) return Point(1);
      if (a.lo > b.hi) return Point(0);
      return Bool(true, true);
    case Op::kGt:
      return CmpInterval(Op::kLt, b, a);
    case Op::kGe:
      return CmpInterval(Op::kLe, b, a);
    default:
      return Bool(true, true);
  }
}

Interval BinaryInterval(Op op, Interval a, Interval b) {
  if (a.point() && b.point()) {
    if ((op == Op::kDiv || op == Op::kMod) && b.lo == 0) return {};
    return Point(ApplyBinary(op, a.lo, b.lo));
  }
  if (IsComparison(op)) return CmpInterval(op, a, b);
  switch (op) {
    case Op::kAdd:
      if (uint64_t{a.hi} + b.hi <= kMax) return {a.lo + b.lo, a.hi + b.hi};
      return {};
    case Op::kSub:
      if (a.lo >= b.hi) return {a.lo - b.hi, a.hi - b.lo};
      return {};
    case Op::kMul:
      if (uint64_t{a.hi} * b.hi <= kMax) return {a.lo * b.lo, a.hi * b.hi};
      return {};
    case Op::kDiv:
      if (b.hi == 0) return {};
      return {a.lo / b.hi, a.hi / std::max<Word>(b.lo, 1)};
    case Op::kMod:
      if (b.hi == 0) return {};
      return {0, std::min(a.hi, b.hi - 1)};
    case Op::kAnd:
      return {0, std::min(a.hi, b.hi)};
    case Op::kOr:
      return {std::max(a.lo, b.lo), PowBound(std::max(a.hi, b.hi))};
    case Op::kXor:
      return {0, PowBound(std::max(a.hi, b.hi))};
    case Op::kShr:
      if (b.point()) {
        if (b.lo >= 32) return Point(0);
        return {a.lo >> b.lo, a.hi >> b.lo};
      }
      return {0, a.hi};
    case Op::kShl:
      if (b.point() && b.lo < 32 && (uint64_t{a.hi} << b.lo) <= kMax) {
        return {a.lo << b.lo, a.hi << b.lo};
      }
      return {};
    case Op::kLogicalAnd:
      return Bool(!(a.always_true() && b.always_true()),
                  !(a.always_false() || b.always_false()));
    case Op::kLogicalOr:
      return Bool(!(a.always_true() || b.always_true()),
                  !(a.always_false() && b.always_false()));
    default:
      return {};
  }
}

Interval UnaryInterval(Op op, Interval a) {
  if (a.point()) return Point(ApplyUnary(op, a.lo));
  switch (op) {
    case Op::kLogicalNot:
      return Bool(!a.always_false(), !a.always_true());
    case Op::kBitNot:
      return {static_cast<Word>(~a.hi), static_cast<Word>(~a.lo)};
    default:
      return {};
  }
}

struct Literal {
  Op op;  // comparison
  const SymNode* lhs;
  const SymNode* rhs;
};

void Flatten(const SymNode* t, bool want, std::vector<Literal>& out) {
  if (t->kind == SymKind::kUnary && t->op == Op::kLogicalNot) {
    Flatten(t->lhs.get(), !want, out);
  } else if (t->kind == SymKind::kBinary && t->op == Op::kLogicalAnd && want) {
    Flatten(t->lhs.get(), true, out);
    Flatten(t->rhs.get(), true, out);
  } else if (t->kind == SymKind::kBinary && t->op == Op::kLogicalOr && !want) {
    Flatten(t->lhs.get(), false, out);
    Flatten(t->rhs.get(), false, out);
  } else if (t->kind == SymKind::kBinary && IsComparison(t->op)) {
    out.push_back({want ? t->op : NegateCmp(t->op), t->lhs.get(),
                   t->rhs.get()});
  }
}

struct Inversion {
  uint32_t symbol;
  Word value;
  bool unique;
};

// Solves chain(x) == target for the single symbol of a chain whose every
// non-symbolic operand is a constant.
std::optional<Inversion> InvertChain(const SymNode* n, Word target,
                                     bool unique = true) {
  for (int depth = 0; depth < 256; ++depth) {
    switch (n->kind) {
      case SymKind::kInput:
        return Inversion{n->input, target, unique};
      case SymKind::kConst:
        return std::nullopt;
      case SymKind::kUnary:
        if (n->op == Op::kNeg) {
          target = Word{0} - target;
        } else if (n->op == Op::kBitNot) {
          target = ~target;
        } else {
          return std::nullopt;
        }
        n = n->lhs.get();
        continue;
      case SymKind::kBinary: {
        const SymNode* l = n->lhs.get();
        const SymNode* r = n->rhs.get();
        if (IsConst(n->rhs)) {
          Word c = r->value;
          switch (n->op) {
            case Op::kAdd: target -= c; break;
            case Op::kSub: target += c; break;
            case Op::kXor: target ^= c; break;
            case Op::kMul:
              if ((c & 1) == 0) return std::nullopt;
              target *= OddInverse(c);
              break;
            case Op::kShl:
              if (c >= 32) return std::nullopt;
              if (c > 0) {
                if ((target & ((Word{1} << c) - 1)) != 0) return std::nullopt;
                target >>= c;
                unique = false;
              }
              break;
            case Op::kShr:
              if (c >= 32) return std::nullopt;
              if (c > 0) {
                if (target > (kMax >> c)) return std::nullopt;
                target <<= c;
                unique = false;
              }
              break;
            default:
              return std::nullopt;
          }
          n = l;
          continue;
        }
        if (IsConst(n->lhs) && n->op == Op::kSub) {
          target = l->value - target;
          n = r;
          continue;
        }
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

class Engine {
 public:
  Engine(const PathPredicate& p, std::span<const Word> base, Clock& clock,
         double deadline, const SolverOptions& options)
      : pred_(p),
        clock_(clock),
        deadline_(deadline),
        options_(options),
        rng_(options.rng_seed) {
    for (const Conjunct& c : p.conjuncts) {
      if (!c.cond) throw std::logic_error("malformed predicate: null term");
      roots_.push_back(prog_.Add(c.cond));
      Flatten(c.cond.get(), c.required == Polarity::kTrue, literals_);
    }
    for (const auto& insn : prog_.insns()) {
      if (insn.kind == SymKind::kInput) symbol_set_.insert(insn.input);
    }
    symbols_.assign(symbol_set_.begin(), symbol_set_.end());
    size_t n = symbols_.empty() ? 0 : symbols_.back() + 1;
    words_.assign(base.begin(), base.end());
    if (words_.size() < n) words_.resize(n, 0);
    for (uint32_t s : symbols_) domains_[s] = Interval{};
    for (const auto& insn : prog_.insns()) {
      if (insn.kind == SymKind::kConst) constants_.insert(insn.value);
    }
    eval_cost_ = prog_.size() + 10;
  }

  SolverVerdict Run() {
    double start = clock_.Now();
    SolverVerdict v = RunStages();
    v.stats = stats_;
    v.stats.elapsed_seconds = clock_.Now() - start;
    return v;
  }

 private:
  SolverVerdict RunStages() {
    PropagateEqualities();
    if (!PropagateIntervals()) {
      return Verdict(SolverVerdict::Kind::kUnsat, "empty interval domain");
    }
    for (uint32_t s : symbols_) {
      const Interval& d = domains_[s];
      words_[s] = std::clamp(words_[s], d.lo, d.hi);
    }

    // Bounded exhaustive search over the one undetermined symbol.
    std::vector<uint32_t> open;
    for (uint32_t s : symbols_) {
      if (!domains_[s].point()) open.push_back(s);
    }
    if (open.size() <= 1) {
      if (open.empty()) {
        if (Fitness(words_) == 0) return SatVerdict();
      } else if (domains_[open[0]].width() <= (uint64_t{1} << 16)) {
        uint32_t s = open[0];
        Word keep = words_[s];
        for (uint64_t v = domains_[s].lo; v <= domains_[s].hi; ++v) {
          words_[s] = static_cast<Word>(v);
          if (Fitness(words_) == 0) return SatVerdict();
          if (Expired()) return Verdict(SolverVerdict::Kind::kUnknown, "deadline");
        }
        words_[s] = keep;
        return Verdict(SolverVerdict::Kind::kUnknown,
                       "no model in exhausted domain");
      }
    }
    return LocalSearch();
  }

  SolverVerdict Verdict(SolverVerdict::Kind k, std::string reason) {
    SolverVerdict v;
    v.kind = k;
    v.reason = std::move(reason);
    return v;
  }

  SolverVerdict SatVerdict() {
    // Independent re-check of every conjunct under DSL semantics.
    if (!Satisfies(pred_, words_)) {
      throw std::logic_error("solver produced a model violating a conjunct");
    }
    SolverVerdict v = Verdict(SolverVerdict::Kind::kSat, "");
    for (uint32_t s : symbols_) v.model[s] = words_[s];
    return v;
  }

  bool Expired() const { return clock_.Now() >= deadline_; }

  void PropagateEqualities() {
    for (const Literal& lit : literals_) {
      if (lit.op != Op::kEq) continue;
      std::optional<Inversion> inv;
      if (lit.rhs->kind == SymKind::kConst) {
        inv = InvertChain(lit.lhs, lit.rhs->value);
      } else if (lit.lhs->kind == SymKind::kConst) {
        inv = InvertChain(lit.rhs, lit.lhs->value);
      }
      if (!inv) continue;
      ++stats_.propagations;
      words_[inv->symbol] = inv->value;
      if (inv->unique) {
        Interval& d = domains_[inv->symbol];
        d.lo = std::max(d.lo, inv->value);
        d.hi = std::min(d.hi, inv->value);
      }
    }
  }

  // Returns false when some domain becomes empty or a conjunct is decided
  // against its required polarity.
  bool PropagateIntervals() {
    for (int round = 0; round < 16; ++round) {
      for (auto& [s, d] : domains_) {
        if (d.empty()) return false;
      }
      ComputeIntervals();
      for (size_t i = 0; i < roots_.size(); ++i) {
        const Interval& r = ivals_[roots_[i]];
        bool want = pred_.conjuncts[i].required == Polarity::kTrue;
        if (want ? r.always_false() : r.always_true()) return false;
      }
      bool changed = false;
      for (const Literal& lit : literals_) {
        if (!NarrowLiteral(lit, changed)) return false;
      }
      if (!changed) return true;
    }
    return true;
  }

  void ComputeIntervals() {
    const auto& insns = prog_.insns();
    ivals_.resize(insns.size());
    for (size_t i = 0; i < insns.size(); ++i) {
      const auto& in = insns[i];
      switch (in.kind) {
        case SymKind::kConst:
          ivals_[i] = Point(in.value);
          break;
        case SymKind::kInput:
          ivals_[i] = domains_.at(in.input);
          break;
        case SymKind::kUnary:
          ivals_[i] = UnaryInterval(in.op, ivals_[in.a]);
          break;
        case SymKind::kBinary:
          ivals_[i] = BinaryInterval(in.op, ivals_[in.a], ivals_[in.b]);
          break;
      }
    }
  }

  bool NarrowLiteral(const Literal& lit, bool& changed) {
    auto narrow = [&](const SymNode* var, Op op, Interval other) {
      if (var->kind != SymKind::kInput) return true;
      Interval& d = domains_[var->input];
      Interval before = d;
      switch (op) {
        case Op::kEq:
          d.lo = std::max(d.lo, other.lo);
          d.hi = std::min(d.hi, other.hi);
          break;
        case Op::kNe:
          if (other.point()) {
            if (d.lo == other.lo) {
              if (d.lo == kMax) return false;
              ++d.lo;
            }
            if (d.hi == other.lo && !d.empty()) {
              if (d.hi == 0) return false;
              --d.hi;
            }
          }
          break;
        case Op::kLt:
          if (other.hi == 0) return false;
          d.hi = std::min(d.hi, other.hi - 1);
          break;
        case Op::kLe:
          d.hi = std::min(d.hi, other.hi);
          break;
        case Op::kGt:
          if (other.lo == kMax) return false;
          d.lo = std::max(d.lo, other.lo + 1);
          break;
        case Op::kGe:
          d.lo = std::max(d.lo, other.lo);
          break;
        default:
          break;
      }
      if (d.lo != before.lo || d.hi != before.hi) {
        changed = true;
        ++stats_.propagations;
      }
      return !d.empty();
    };
    Interval li = ivals_[prog_.RegOf(lit.lhs)];
    Interval ri = ivals_[prog_.RegOf(lit.rhs)];
    return narrow(lit.lhs, lit.op, ri) && narrow(lit.rhs, MirrorCmp(lit.op), li);
  }

  uint64_t Distance(const SymNode* n, bool want) const {
    uint32_t r = prog_.RegOf(n);
    // Both sides of and/or are evaluated, so a fault anywhere below fails
    // the whole condition.
    if (poison_[r]) return kBig;
    if (n->kind == SymKind::kUnary && n->op == Op::kLogicalNot) {
      return Distance(n->lhs.get(), !want);
    }
    if (n->kind == SymKind::kBinary) {
      if (n->op == Op::kLogicalAnd || n->op == Op::kLogicalOr) {
        uint64_t a = Distance(n->lhs.get(), want);
        uint64_t b = Distance(n->rhs.get(), want);
        bool conj = (n->op == Op::kLogicalAnd) == want;
        return conj ? a + b : std::min(a, b);
      }
      if (IsComparison(n->op)) {
        uint32_t ra = prog_.RegOf(n->lhs.get());
        uint32_t rb = prog_.RegOf(n->rhs.get());
        if (poison_[ra] || poison_[rb]) return kBig;
        return CmpDistance(want ? n->op : NegateCmp(n->op), regs_[ra],
                           regs_[rb]);
      }
    }
    Word v = regs_[r];
    if (want) return v != 0 ? 0 : 1;
    return v;
  }

  uint64_t Fitness(const std::vector<Word>& words) {
    ++stats_.search_nodes;
    clock_.Charge(eval_cost_);
    prog_.Run(words, regs_, poison_);
    uint64_t total = 0;
    for (const Conjunct& c : pred_.conjuncts) {
      total += Distance(c.cond.get(), c.required == Polarity::kTrue);
    }
    return total;
  }

  // Candidate (symbol, value) pairs that would make an unsatisfied
  // comparison hold if everything else stayed fixed.
  void InversionMoves(const SymNode* n, bool want,
                      std::vector<std::pair<uint32_t, Word>>& out) const {
    if (n->kind == SymKind::kUnary && n->op == Op::kLogicalNot) {
      InversionMoves(n->lhs.get(), !want, out);
      return;
    }
    if (n->kind != SymKind::kBinary) return;
    if (n->op == Op::kLogicalAnd || n->op == Op::kLogicalOr) {
      InversionMoves(n->lhs.get(), want, out);
      InversionMoves(n->rhs.get(), want, out);
      return;
    }
    if (!IsComparison(n->op)) return;
    Op op = want ? n->op : NegateCmp(n->op);
    uint32_t ra = prog_.RegOf(n->lhs.get());
    uint32_t rb = prog_.RegOf(n->rhs.get());
    if (poison_[ra] || poison_[rb]) return;
    Word a = regs_[ra], b = regs_[rb];
    if (CmpDistance(op, a, b) == 0) return;
    auto target_for = [](Op o, Word other) -> std::optional<Word> {
      switch (o) {
        case Op::kEq:
        case Op::kLe:
        case Op::kGe: return other;
        case Op::kNe: return other + 1;
        case Op::kLt:
          if (other == 0) return std::nullopt;
          return other - 1;
        case Op::kGt:
          if (other == kMax) return std::nullopt;
          return other + 1;
        default: return std::nullopt;
      }
    };
    if (auto t = target_for(op, b)) Pinned(n->lhs.get(), *t, out, 0);
    if (auto t = target_for(MirrorCmp(op), a)) Pinned(n->rhs.get(), *t, out, 0);
  }

  // Like InvertChain but treats every non-chain operand as pinned to its
  // current value.
  void Pinned(const SymNode* n, Word target,
              std::vector<std::pair<uint32_t, Word>>& out, int depth) const {
    if (depth > 64) return;
    switch (n->kind) {
      case SymKind::kInput:
        out.emplace_back(n->input, target);
        return;
      case SymKind::kConst:
        return;
      case SymKind::kUnary:
        if (n->op == Op::kNeg) Pinned(n->lhs.get(), Word{0} - target, out, depth + 1);
        if (n->op == Op::kBitNot) Pinned(n->lhs.get(), ~target, out, depth + 1);
        return;
      case SymKind::kBinary: {
        const SymNode* l = n->lhs.get();
        const SymNode* r = n->rhs.get();
        Word lv = regs_[prog_.RegOf(l)];
        Word rv = regs_[prog_.RegOf(r)];
        bool lsym = l->kind != SymKind::kConst;
        bool rsym = r->kind != SymKind::kConst;
        switch (n->op) {
          case Op::kAdd:
            if (lsym) Pinned(l, target - rv, out, depth + 1);
            if (rsym) Pinned(r, target - lv, out, depth + 1);
            return;
          case Op::kSub:
            if (lsym) Pinned(l, target + rv, out, depth + 1);
            if (rsym) Pinned(r, lv - target, out, depth + 1);
            return;
          case Op::kXor:
            if (lsym) Pinned(l, target ^ rv, out, depth + 1);
            if (rsym) Pinned(r, target ^ lv, out, depth + 1);
            return;
          case Op::kMul:
            if (lsym && (rv & 1)) Pinned(l, target * OddInverse(rv), out, depth + 1);
            if (rsym && (lv & 1)) Pinned(r, target * OddInverse(lv), out, depth + 1);
            return;
          case Op::kShl:
            if (lsym && rv > 0 && rv < 32 &&
                (target & ((Word{1} << rv) - 1)) == 0) {
              Pinned(l, (target >> rv) | (lv & ~(kMax >> rv)), out, depth + 1);
            }
            return;
          case Op::kShr:
            if (lsym && rv > 0 && rv < 32 && target <= (kMax >> rv)) {
              Pinned(l, (target << rv) | (lv & ((Word{1} << rv) - 1)), out,
                     depth + 1);
            }
            return;
          case Op::kAnd:
            // Keep bits outside the mask, force the masked ones.
            if (lsym && IsConst(n->rhs) && (target & ~rv) == 0) {
              Pinned(l, (lv & ~rv) | target, out, depth + 1);
            }
            return;
          case Op::kMod:
            if (lsym && rv != 0 && target < rv) {
              Pinned(l, lv - lv % rv + target, out, depth + 1);
            }
            return;
          default:
            return;
        }
      }
    }
  }

  std::vector<uint32_t> ActiveSymbols() {
    // Symbols of conjuncts that currently fail; regs_ reflect words_.
    std::set<uint32_t> active;
    for (const Conjunct& c : pred_.conjuncts) {
      if (Distance(c.cond.get(), c.required == Polarity::kTrue) != 0) {
        CollectInputs(c.cond, active);
      }
    }
    return {active.begin(), active.end()};
  }

  SolverVerdict LocalSearch() {
    uint64_t f = Fitness(words_);
    std::vector<Word> trial;
    int stall = 0;
    while (true) {
      if (f == 0) return SatVerdict();
      if (Expired()) return Verdict(SolverVerdict::Kind::kUnknown, "deadline");
      if (stats_.search_nodes >= options_.max_evaluations) {
        return Verdict(SolverVerdict::Kind::kUnknown, "evaluation limit");
      }
      // regs_ are stale after trial evaluations; refresh for move generation.
      Fitness(words_);
      std::vector<uint32_t> active = ActiveSymbols();
      std::vector<std::pair<uint32_t, Word>> moves;
      for (const Conjunct& c : pred_.conjuncts) {
        InversionMoves(c.cond.get(), c.required == Polarity::kTrue, moves);
      }

      auto try_value = [&](uint32_t s, Word v, uint64_t& best_f,
                           std::pair<uint32_t, Word>& best) {
        const Interval& d = domains_[s];
        if (v < d.lo || v > d.hi || v == words_[s]) return;
        trial = words_;
        trial[s] = v;
        uint64_t tf = Fitness(trial);
        if (tf < best_f) {
          best_f = tf;
          best = {s, v};
        }
      };

      uint64_t best_f = f;
      std::pair<uint32_t, Word> best{0, 0};
      for (auto [s, v] : moves) {
        if (!symbol_set_.contains(s)) continue;
        try_value(s, v, best_f, best);
        if (Expired()) break;
      }
      if (best_f < f) {
        words_[best.first] = best.second;
        f = best_f;
        stall = 0;
        continue;
      }

      // Alternating variable method with accelerating steps.
      bool moved = false;
      for (uint32_t s : active) {
        for (int dir : {+1, -1}) {
          const Interval& d = domains_[s];
          int64_t step = dir;
          int64_t cur = words_[s];
          uint64_t local_f = f;
          while (true) {
            int64_t next = cur + step;
            if (next < d.lo || next > d.hi) break;
            trial = words_;
            trial[s] = static_cast<Word>(next);
            uint64_t tf = Fitness(trial);
            if (tf >= local_f) break;
            local_f = tf;
            cur = next;
            step *= 2;
          }
          if (local_f < f) {
            words_[s] = static_cast<Word>(cur);
            f = local_f;
            moved = true;
            break;
          }
        }
        if (moved || Expired()) break;
      }
      if (moved) {
        stall = 0;
        continue;
      }

      // Bit flips, domain bounds and predicate constants.
      for (uint32_t s : active) {
        const Interval& d = domains_[s];
        for (int bit = 0; bit < 32; ++bit) {
          try_value(s, words_[s] ^ (Word{1} << bit), best_f, best);
        }
        try_value(s, d.lo, best_f, best);
        try_value(s, d.hi, best_f, best);
        for (Word c : constants_) {
          try_value(s, c, best_f, best);
          try_value(s, c + 1, best_f, best);
          try_value(s, c - 1, best_f, best);
        }
        if (Expired()) break;
      }
      if (best_f < f) {
        words_[best.first] = best.second;
        f = best_f;
        stall = 0;
        continue;
      }

      // Local optimum: perturb.
      ++stall;
      if (active.empty()) active = symbols_;
      if (active.empty()) {
        return Verdict(SolverVerdict::Kind::kUnknown, "no free symbols");
      }
      uint32_t s = active[rng_() % active.size()];
      const Interval& d = domains_[s];
      Word v;
      if (stall % 2 == 0) {
        v = d.lo + static_cast<Word>(rng_() % d.width());
      } else {
        v = words_[s] ^ static_cast<Word>(rng_() & ((Word{1} << (rng_() % 32)) | 0xFF));
        v = std::clamp(v, d.lo, d.hi);
      }
      words_[s] = v;
      f = Fitness(words_);
    }
  }

  const PathPredicate& pred_;
  Clock& clock_;
  double deadline_;
  SolverOptions options_;
  std::mt19937_64 rng_;
  SymProgram prog_;
  std::vector<uint32_t> roots_;
  std::set<uint32_t> symbol_set_;
  std::vector<uint32_t> symbols_;
  std::vector<Literal> literals_;
  std::map<uint32_t, Interval> domains_;
  std::set<Word> constants_;
  std::vector<Word> words_;
  std::vector<Word> regs_;
  std::vector<uint8_t> poison_;
  std::vector<Interval> ivals_;
  uint64_t eval_cost_ = 0;
  SolverStats stats_;
};

}  // namespace

uint64_t BranchDistance(const Conjunct& c, std::span<const Word> words) {
  if (!c.cond) throw std::logic_error("malformed predicate: null term");
  SymProgram prog;
  prog.Add(c.cond);
  std::vector<Word> regs;
  std::vector<uint8_t> poison;
  prog.Run(words, regs, poison);
  struct Walker {
    const SymProgram& prog;
    const std::vector<Word>& regs;
    const std::vector<uint8_t>& poison;
    uint64_t Dist(const SymNode* n, bool want) const {
      uint32_t r = prog.RegOf(n);
      if (poison[r]) return kBig;
      if (n->kind == SymKind::kUnary && n->op == Op::kLogicalNot) {
        return Dist(n->lhs.get(), !want);
      }
      if (n->kind == SymKind::kBinary) {
        if (n->op == Op::kLogicalAnd || n->op == Op::kLogicalOr) {
          uint64_t a = Dist(n->lhs.get(), want);
          uint64_t b = Dist(n->rhs.get(), want);
          return ((n->op == Op::kLogicalAnd) == want) ? a + b : std::min(a, b);
        }
        if (IsComparison(n->op)) {
          uint32_t ra = prog.RegOf(n->lhs.get());
          uint32_t rb = prog.RegOf(n->rhs.get());
          if (poison[ra] || poison[rb]) return kBig;
          return CmpDistance(want ? n->op : NegateCmp(n->op), regs[ra],
                             regs[rb]);
        }
      }
      return want ? (regs[r] != 0 ? 0 : 1) : regs[r];
    }
  };
  return Walker{prog, regs, poison}.Dist(c.cond.get(),
                                         c.required == Polarity::kTrue);
}

bool Satisfies(const PathPredicate& p, std::span<const Word> words) {
  // One program for all conjuncts; path conditions share most subterms.
  SymProgram prog;
  std::vector<uint32_t> roots;
  for (const Conjunct& c : p.conjuncts) {
    if (!c.cond) throw std::logic_error("malformed predicate: null term");
    roots.push_back(prog.Add(c.cond));
  }
  std::vector<Word> regs;
  std::vector<uint8_t> poison;
  prog.Run(words, regs, poison);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (poison[roots[i]]) return false;
    if (ToPolarity(regs[roots[i]] != 0) != p.conjuncts[i].required) {
      return false;
    }
  }
  return true;
}

std::vector<Word> ApplyModel(std::span<const Word> base,
                             const std::map<uint32_t, Word>& model) {
  std::vector<Word> out(base.begin(), base.end());
  for (const auto& [index, value] : model) {
    if (index >= out.size()) out.resize(index + 1, 0);
    out[index] = value;
  }
  return out;
}

SolverVerdict Solve(const PathPredicate& predicate, std::span<const Word> base,
                    Clock& clock, double deadline,
                    const SolverOptions& options) {
  Engine engine(predicate, base, clock, deadline, options);
  return engine.Run();
}

}  // namespace fuce
