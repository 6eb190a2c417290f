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

#include <gtest/gtest.h>

#include "fuce/clock.h"
#include "generators.h"

namespace fuce {
namespace {

SymRef In(uint32_t k) { return SymInput(k); }
SymRef C(Word v) { return SymConst(v); }
SymRef Bin(Op op, SymRef a, SymRef b) {
  return SymBinary(op, std::move(a), std::move(b));
}

SolverVerdict SolveFresh(const PathPredicate& p, std::vector<Word> base = {},
                  uint64_t seed = 0, double seconds = 1.0) {
  VirtualClock clock;
  return Solve(p, base, clock, seconds, SolverOptions{seed});
}

TEST(Solver, MotivatingGuardConstants) {
  PathPredicate p{{{Bin(Op::kEq, In(0), C(23978)), Polarity::kTrue},
                   {Bin(Op::kEq, In(1), C(5678)), Polarity::kTrue}}};
  SolverVerdict v = SolveFresh(p, {0, 0});
  ASSERT_TRUE(v.sat()) << v.reason;
  EXPECT_EQ(v.model.at(0), 23978u);
  EXPECT_EQ(v.model.at(1), 5678u);
}

TEST(Solver, CombinedGuardTermSolved) {
  SymRef guard = Bin(Op::kLogicalAnd, Bin(Op::kEq, In(0), C(23978)),
                     Bin(Op::kEq, In(1), C(5678)));
  SolverVerdict v = SolveFresh({{{guard, Polarity::kTrue}}}, {3, 4});
  ASSERT_TRUE(v.sat()) << v.reason;
  EXPECT_EQ(ApplyModel(std::vector<Word>{3, 4}, v.model),
            (std::vector<Word>{23978, 5678}));
}

TEST(Solver, UnsignedLessThanZeroIsUnsat) {
  SolverVerdict v = SolveFresh({{{Bin(Op::kLt, In(0), C(0)), Polarity::kTrue}}});
  EXPECT_EQ(v.kind, SolverVerdict::Kind::kUnsat);
}

TEST(Solver, ContradictoryIntervalsAreUnsat) {
  PathPredicate p{{{Bin(Op::kGt, In(0), C(100)), Polarity::kTrue},
                   {Bin(Op::kLe, In(0), C(50)), Polarity::kTrue}}};
  EXPECT_EQ(SolveFresh(p).kind, SolverVerdict::Kind::kUnsat);
}

TEST(Solver, AffineModuloFoundAndVerified) {
  // Brute-force oracle over the residues that matter.
  auto holds = [](Word x) { return (x * 3 + 7) % 256 == 19; };
  int residues = 0;
  for (Word x = 0; x < 256; ++x) residues += holds(x);
  ASSERT_GT(residues, 0);

  SymRef lhs = Bin(Op::kMod, Bin(Op::kAdd, Bin(Op::kMul, In(0), C(3)), C(7)),
                   C(256));
  PathPredicate p{{{Bin(Op::kEq, lhs, C(19)), Polarity::kTrue}}};
  SolverVerdict v = SolveFresh(p, {0});
  ASSERT_TRUE(v.sat()) << v.reason;
  EXPECT_TRUE(holds(v.model.at(0)));
  EXPECT_TRUE(Satisfies(p, ApplyModel(std::vector<Word>{0}, v.model)));
}

TEST(Solver, InvertibleChains) {
  // (x ^ 0x55) + 9 == 1000, and (~y) * 5 == 77 (5 is odd, so unique).
  PathPredicate p{
      {{Bin(Op::kEq, Bin(Op::kAdd, Bin(Op::kXor, In(0), C(0x55)), C(9)),
            C(1000)),
        Polarity::kTrue},
       {Bin(Op::kEq, Bin(Op::kMul, SymUnary(Op::kBitNot, In(1)), C(5)),
            C(77)),
        Polarity::kTrue}}};
  SolverVerdict v = SolveFresh(p, {0, 0});
  ASSERT_TRUE(v.sat()) << v.reason;
  EXPECT_EQ(v.model.at(0), (1000u - 9u) ^ 0x55u);
  EXPECT_EQ(static_cast<Word>(~v.model.at(1) * 5u), 77u);
}

TEST(Solver, FalsePolarityAndMissingWords) {
  // Word 5 does not exist in the base; the model grows the test.
  PathPredicate p{{{Bin(Op::kEq, In(5), C(0)), Polarity::kFalse}}};
  SolverVerdict v = SolveFresh(p, {1});
  ASSERT_TRUE(v.sat());
  std::vector<Word> w = ApplyModel(std::vector<Word>{1}, v.model);
  ASSERT_EQ(w.size(), 6u);
  EXPECT_NE(w[5], 0u);
}

TEST(Solver, DivisorGuardsRespected) {
  // 100 / x == 7 has solutions x in [13, 14].
  PathPredicate p{{{Bin(Op::kNe, In(0), C(0)), Polarity::kTrue},
                   {Bin(Op::kEq, Bin(Op::kDiv, C(100), In(0)), C(7)),
                    Polarity::kTrue}}};
  SolverVerdict v = SolveFresh(p, {0});
  ASSERT_TRUE(v.sat()) << v.reason;
  EXPECT_EQ(100u / v.model.at(0), 7u);
}

TEST(Solver, FaultInEitherOperandFailsDisjunction) {
  // `or` evaluates both sides; in[1] / in[2] faults when in[2] == 0.
  SymRef c = Bin(Op::kLogicalOr, Bin(Op::kEq, In(0), C(5)),
                 Bin(Op::kEq, Bin(Op::kDiv, In(1), In(2)), C(1)));
  Conjunct k{c, Polarity::kTrue};
  EXPECT_GT(BranchDistance(k, std::vector<Word>{5, 1, 0}), 0u);
  EXPECT_EQ(BranchDistance(k, std::vector<Word>{5, 1, 2}), 0u);
  SolverVerdict v = SolveFresh({{k}}, {5, 1, 0});
  ASSERT_TRUE(v.sat());
  EXPECT_NE(v.model.at(2), 0u);
}

TEST(Solver, DeterministicForFixedSeed) {
  testing::PredicateGenerator gen(3);
  for (int i = 0; i < 200; ++i) {
    testing::GeneratedPredicate g = gen.Next();
    SolverVerdict a = SolveFresh(g.predicate, {}, 17, 0.02);
    SolverVerdict b = SolveFresh(g.predicate, {}, 17, 0.02);
    ASSERT_EQ(a.kind, b.kind);
    ASSERT_EQ(a.model, b.model);
  }
}

TEST(Solver, DeadlineGivesUnknown) {
  // A 32-bit hash collision the search cannot find in a few evaluations.
  SymRef h = Bin(Op::kMul, Bin(Op::kXor, In(0), Bin(Op::kShr, In(0), C(13))),
                 C(2654435761u));
  SymRef h2 = Bin(Op::kXor, h, Bin(Op::kShr, h, C(16)));
  PathPredicate p{{{Bin(Op::kEq, h2, C(0x12345678)), Polarity::kTrue},
                   {Bin(Op::kEq, Bin(Op::kAnd, In(0), C(0xFF)), C(0x3C)),
                    Polarity::kTrue}}};
  VirtualClock clock;
  SolverVerdict v = Solve(p, std::vector<Word>{0}, clock, 0.001);
  EXPECT_NE(v.kind, SolverVerdict::Kind::kUnsat);
  if (v.sat()) EXPECT_TRUE(Satisfies(p, ApplyModel(std::vector<Word>{0}, v.model)));
}

TEST(Solver, NullTermIsProgrammingError) {
  VirtualClock clock;
  PathPredicate p{{{nullptr, Polarity::kTrue}}};
  EXPECT_THROW(Solve(p, std::vector<Word>{}, clock, 1.0), std::logic_error);
}

TEST(BranchDistance, StandardForms) {
  std::vector<Word> w = {10, 3};
  EXPECT_EQ(BranchDistance({Bin(Op::kEq, In(0), In(1)), Polarity::kTrue}, w),
            7u);
  EXPECT_EQ(BranchDistance({Bin(Op::kEq, In(0), In(1)), Polarity::kFalse}, w),
            0u);
  EXPECT_EQ(BranchDistance({Bin(Op::kLt, In(0), In(1)), Polarity::kTrue}, w),
            8u);
  EXPECT_EQ(BranchDistance({Bin(Op::kNe, In(0), C(10)), Polarity::kTrue}, w),
            1u);
}

TEST(SolverProperty, ModelFirstPredicatesAreNeverUnsat) {
  testing::PredicateGenerator gen(101);
  int sat = 0;
  for (int i = 0; i < 1500; ++i) {
    testing::GeneratedPredicate g = gen.Next();
    SolverVerdict v = SolveFresh(g.predicate, {}, i, 0.05);
    ASSERT_NE(v.kind, SolverVerdict::Kind::kUnsat)
        << "instance " << i << ": " << v.reason;
    if (v.sat()) {
      ++sat;
      std::vector<Word> w;
      for (auto [k, x] : v.model) {
        if (w.size() <= k) w.resize(k + 1, 0);
        w[k] = x;
      }
      ASSERT_TRUE(Satisfies(g.predicate, w));
    }
  }
  EXPECT_GT(sat, 1200);
}

}  // namespace
}  // namespace fuce
