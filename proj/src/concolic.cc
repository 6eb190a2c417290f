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

#include "fuce/concolic.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "fuce/interpreter.h"

namespace fuce {
namespace {

struct ShadowValue {
  Word c = 0;
  SymRef s;  // null when the value does not depend on the input
};

class ShadowMachine {
 public:
  using Value = ShadowValue;

  Value Const(Word w) { return {w, nullptr}; }
  Value Input(uint32_t index, Word concrete) {
    return {concrete, SymInput(index)};
  }
  Value Unary(Op op, const Value& a) {
    Word c = ApplyUnary(op, a.c);
    if (!a.s) return {c, nullptr};
    return {c, Bound(SymUnary(op, a.s))};
  }
  Value Binary(Op op, const Value& a, const Value& b) {
    Word c = ApplyBinary(op, a.c, b.c);
    if (!a.s && !b.s) return {c, nullptr};
    SymRef sa = a.s ? a.s : SymConst(a.c);
    SymRef sb = b.s ? b.s : SymConst(b.c);
    return {c, Bound(SymBinary(op, std::move(sa), std::move(sb)))};
  }
  Word Concrete(const Value& v) { return v.c; }
  void OnDivisor(const Value& d) {
    if (d.s) pending_.push_back(SymBinary(Op::kNe, d.s, SymConst(0)));
  }
  void OnDecision(BranchId branch, uint32_t occurrence, Polarity taken,
                  const Value& cond) {
    ConditionRecord r;
    r.branch = branch;
    r.occurrence = occurrence;
    r.cond = cond.s ? cond.s : SymConst(cond.c);
    r.taken = taken;
    r.guards = std::move(pending_);
    pending_.clear();
    records_.push_back(std::move(r));
    decisions_.push_back({branch, taken, occurrence});
  }

  std::vector<ConditionRecord> records_;
  std::vector<Decision> decisions_;

 private:
  // Concretizes overly deep terms.
  static SymRef Bound(SymRef s) {
    return s->depth > kMaxShadowDepth ? nullptr : s;
  }

  std::vector<SymRef> pending_;
};

}  // namespace

ShadowTrace ShadowExecute(const Design& design, std::span<const Word> words,
                          uint64_t step_limit) {
  ShadowMachine m;
  Interpreter<ShadowMachine> interp(design, words, step_limit, m);
  interp.Run();
  ShadowTrace t;
  t.records = std::move(m.records_);
  t.concrete.decisions = std::move(m.decisions_);
  t.concrete.outputs.values = interp.outputs();
  t.concrete.steps_used = interp.steps_used();
  t.concrete.fault = interp.fault();
  t.concrete.input_exhausted = interp.input_exhausted();
  return t;
}

size_t ExecutionTree::Grow(const std::vector<ConditionRecord>& records,
                           std::span<const Word> witness) {
  if (records.empty()) return 0;
  size_t added = 0;
  uint32_t witness_index = static_cast<uint32_t>(witnesses_.size());
  bool used_witness = false;
  auto make = [&](const ConditionRecord& r, int32_t parent, Polarity via) {
    Node n;
    n.branch = r.branch;
    n.occurrence = r.occurrence;
    n.parent = parent;
    n.via = via;
    n.cond = r.cond;
    n.guards = r.guards;
    n.witness = witness_index;
    used_witness = true;
    nodes_.push_back(std::move(n));
    ++added;
    return static_cast<int32_t>(nodes_.size() - 1);
  };
  if (root_ == kNone) root_ = make(records[0], kNone, Polarity::kFalse);
  int32_t cur = root_;
  for (size_t i = 0; i < records.size(); ++i) {
    int p = static_cast<int>(records[i].taken);
    nodes_[cur].seen[p] = true;
    if (i + 1 == records.size()) break;
    int32_t next = nodes_[cur].child[p];
    if (next == kNone) {
      next = make(records[i + 1], cur, records[i].taken);
      nodes_[cur].child[p] = next;
    }
    cur = next;
  }
  if (used_witness) witnesses_.emplace_back(witness.begin(), witness.end());
  return added;
}

std::vector<FrontierEntry> ExecutionTree::Frontier(
    const CoverageMap& global, uint32_t round, uint32_t occurrence_cap,
    std::vector<std::vector<uint32_t>>* admitted) const {
  std::vector<FrontierEntry> dfs;
  if (root_ != kNone) {
    std::vector<int32_t> stack{root_};
    while (!stack.empty()) {
      int32_t i = stack.back();
      stack.pop_back();
      const Node& n = nodes_[i];
      for (int p = 0; p < 2; ++p) {
        if (n.seen[p] || n.unsat[p]) continue;
        if (round != 0 && n.attempted_round[p] == round) continue;
        dfs.push_back({static_cast<uint32_t>(i), static_cast<Polarity>(p)});
      }
      // Push true first so the false side is visited first.
      if (n.child[1] != kNone) stack.push_back(n.child[1]);
      if (n.child[0] != kNone) stack.push_back(n.child[0]);
    }
  }
  std::stable_partition(dfs.begin(), dfs.end(), [&](const FrontierEntry& e) {
    return !global.Covered({nodes_[e.node].branch, e.missing});
  });
  if (admitted == nullptr) return dfs;
  std::vector<FrontierEntry> out;
  for (const FrontierEntry& e : dfs) {
    const Node& n = nodes_[e.node];
    if (admitted->size() <= n.branch) admitted->resize(n.branch + 1);
    auto& levels = (*admitted)[n.branch];
    if (std::find(levels.begin(), levels.end(), n.occurrence) == levels.end()) {
      if (levels.size() >= occurrence_cap) continue;
      levels.push_back(n.occurrence);
    }
    out.push_back(e);
  }
  return out;
}

PathPredicate ExecutionTree::BuildPredicate(uint32_t node,
                                            Polarity missing) const {
  std::vector<Conjunct> path;
  const Node* target = &nodes_[node];
  auto add_guards = [&](const Node& n) {
    for (auto it = n.guards.rbegin(); it != n.guards.rend(); ++it) {
      path.push_back({*it, Polarity::kTrue});
    }
  };
  path.push_back({target->cond, missing});
  add_guards(*target);
  for (int32_t i = target->parent, via = static_cast<int>(target->via);
       i != kNone;) {
    const Node& n = nodes_[i];
    path.push_back({n.cond, static_cast<Polarity>(via)});
    add_guards(n);
    via = static_cast<int>(n.via);
    i = n.parent;
  }
  std::reverse(path.begin(), path.end());

  PathPredicate p;
  std::set<std::pair<const SymNode*, Polarity>> seen;
  for (size_t k = 0; k < path.size(); ++k) {
    const Conjunct& c = path[k];
    bool is_target = k + 1 == path.size();
    if (!is_target && IsConst(c.cond) &&
        ToPolarity(c.cond->value != 0) == c.required) {
      continue;
    }
    if (!seen.insert({c.cond.get(), c.required}).second && !is_target) {
      continue;
    }
    p.conjuncts.push_back(c);
  }
  return p;
}

std::string ExecutionTree::ToDot() const {
  std::ostringstream os;
  os << "digraph exec_tree {\n  node [shape=box];\n";
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    os << "  n" << i << " [label=\"b" << n.branch << "#" << n.occurrence
       << "\"];\n";
    for (int p = 0; p < 2; ++p) {
      const char* label = p ? "T" : "F";
      if (n.child[p] != kNone) {
        os << "  n" << i << " -> n" << n.child[p] << " [label=\"" << label
           << "\"];\n";
      } else if (n.seen[p]) {
        os << "  n" << i << "_" << label << " [shape=point];\n";
        os << "  n" << i << " -> n" << i << "_" << label << " [label=\""
           << label << "\"];\n";
      } else {
        os << "  n" << i << "_" << label << " [shape=point,color=red];\n";
        os << "  n" << i << " -> n" << i << "_" << label << " [label=\""
           << label << (n.unsat[p] ? " unsat" : "")
           << "\",style=dashed,color=red];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

ConcolicEngine::ConcolicEngine(const Design& design, ConcolicOptions options)
    : design_(design), options_(options) {}

void ConcolicEngine::Absorb(std::span<const Word> words, Clock& clock) {
  ShadowTrace t = ShadowExecute(design_, words, options_.step_limit);
  clock.Charge(kExecOverheadTicks + kShadowStepTicks * t.concrete.steps_used);
  tree_.Grow(t.records, words);
}

ConcolicOutcome ConcolicEngine::RunPhase(std::span<const TestCase> seeds,
                                         std::span<const uint64_t> seed_ids,
                                         const CoverageMap& global,
                                         Clock& clock, double budget,
                                         PhaseId phase,
                                         const ConcolicSink& sink) {
  ConcolicOutcome out;
  ++round_;
  const double deadline = clock.Now() + budget;
  for (size_t i = 0; i < seeds.size(); ++i) {
    if (i < seed_ids.size()) {
      auto it = std::lower_bound(absorbed_.begin(), absorbed_.end(),
                                 seed_ids[i]);
      if (it != absorbed_.end() && *it == seed_ids[i]) continue;
      absorbed_.insert(it, seed_ids[i]);
    }
    Absorb(seeds[i].words, clock);
    if (clock.Now() >= deadline) {
      out.budget_exhausted = true;
      return out;
    }
  }

  std::vector<std::vector<uint32_t>> admitted(design_.branch_count);
  while (true) {
    std::vector<FrontierEntry> frontier =
        tree_.Frontier(global, round_, options_.occurrence_cap, &admitted);
    if (frontier.empty()) break;
    double per_call = std::max(budget / static_cast<double>(frontier.size()),
                               options_.min_solver_seconds);
    for (const FrontierEntry& e : frontier) {
      double now = clock.Now();
      if (now >= deadline) {
        out.budget_exhausted = true;
        return out;
      }
      int p = static_cast<int>(e.missing);
      if (tree_.node(e.node).seen[p]) continue;
      tree_.mutable_node(e.node).attempted_round[p] = round_;

      PathPredicate pred = tree_.BuildPredicate(e.node, e.missing);
      std::vector<Word> base = tree_.witness(tree_.node(e.node).witness);
      SolverOptions so;
      so.rng_seed = options_.rng_seed ^ (0x9E3779B97F4A7C15ull * ++solver_calls_);
      SolverVerdict v = Solve(pred, base, clock,
                              std::min(now + per_call, deadline), so);
      if (v.kind == SolverVerdict::Kind::kUnsat) {
        ++out.unsat;
        tree_.mutable_node(e.node).unsat[p] = true;
        continue;
      }
      if (v.kind == SolverVerdict::Kind::kUnknown) {
        ++out.unknown;
        continue;
      }
      ++out.sat;
      std::vector<Word> words = ApplyModel(base, v.model);
      ShadowTrace t = ShadowExecute(design_, words, options_.step_limit);
      clock.Charge(kExecOverheadTicks +
                   kShadowStepTicks * t.concrete.steps_used);
      tree_.Grow(t.records, words);
      if (!tree_.node(e.node).seen[p]) {
        ++out.replay_failures;
        continue;
      }
      const auto& n = tree_.node(e.node);
      EmissionTarget target{n.branch, n.occurrence, e.missing};
      TestCase test;
      test.words = std::move(words);
      test.origin = Origin::kConcolic;
      test.phase = phase;
      ++out.tests_emitted;
      if (sink && sink(std::move(test), t.concrete, target)) {
        out.stopped = true;
        return out;
      }
    }
  }
  return out;
}

}  // namespace fuce
