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

#include "fuce/dsl.h"

#include <gtest/gtest.h>

#include <regex>
#include <string>

#include "fuce/corpus.h"
#include "generators.h"

namespace fuce {
namespace {

// Independent count of conditional sites: `if (` and `while (` tokens.
uint32_t CountConditionals(const std::string& source) {
  static const std::regex kSite(R"(\b(if|while)\s*\()");
  return static_cast<uint32_t>(std::distance(
      std::sregex_iterator(source.begin(), source.end(), kSite),
      std::sregex_iterator()));
}

const BenchmarkEntry& Motivating() {
  static const std::vector<BenchmarkEntry> suite = BuiltinSuite();
  return suite.front();
}

TEST(Dsl, MotivatingControllerHasSixBranches) {
  const BenchmarkEntry& e = Motivating();
  EXPECT_EQ(CountConditionals(e.dut_source), 6u);
  EXPECT_EQ(e.dut.branch_count, 6u);
  EXPECT_EQ(AllEdges(e.dut).size(), 12u);
  EXPECT_EQ(e.dut.input_arity, 2u);
}

TEST(Dsl, BranchlessEcho) {
  Design d = ParseDesign("design d { inputs 1; output(in[0]); }");
  EXPECT_EQ(d.branch_count, 0u);
  EXPECT_EQ(d.input_arity, 1u);
  EXPECT_TRUE(AllEdges(d).empty());
}

TEST(Dsl, MalformedSourceIsSyntaxError) {
  EXPECT_THROW(ParseDesign("design d { inputs 1; if (in[0] < }"), SyntaxError);
}

TEST(Dsl, SemanticErrors) {
  // slot out of range
  EXPECT_THROW(ParseDesign("design d { inputs 1; output(in[1]); }"),
               SemanticError);
  // non-boolean condition
  EXPECT_THROW(ParseDesign("design d { inputs 1; if (in[0] + 1) { halt; } }"),
               SemanticError);
}

TEST(Dsl, ThreeBranchesGiveSixEdges) {
  Design d = ParseDesign(R"(design d {
    inputs 1;
    if (in[0] == 1) { output(1); }
    if (in[0] == 2) { output(2); } else { output(3); }
    x = 0;
    while (x < 3) { x = x + 1; }
  })");
  EXPECT_EQ(d.branch_count, 3u);
  std::vector<BranchEdge> edges = AllEdges(d);
  ASSERT_EQ(edges.size(), 6u);
  for (uint32_t i = 0; i < 6; ++i) {
    EXPECT_EQ(edges[i].Index(), i);
    EXPECT_EQ(BranchEdge::FromIndex(i), edges[i]);
  }
}

TEST(Dsl, BranchIdsArePreOrder) {
  Design d = ParseDesign(R"(design d {
    inputs 1;
    if (in[0] == 1) {
      if (in[0] == 2) { output(1); }
    } else {
      while (false) { halt; }
    }
    if (in[0] == 3) { output(3); }
  })");
  ASSERT_EQ(d.body.size(), 2u);
  EXPECT_EQ(d.body[0].branch, 0u);
  EXPECT_EQ(d.body[0].then_body[0].branch, 1u);
  EXPECT_EQ(d.body[0].else_body[0].branch, 2u);
  EXPECT_EQ(d.body[1].branch, 3u);
}

TEST(Dsl, TernaryBecomesBranch) {
  Design d = ParseDesign(
      "design d { inputs 1; y = in[0] > 5 ? 1 : 2; output(y); }");
  EXPECT_EQ(d.branch_count, 1u);
}

TEST(Dsl, LiteralsHarvestedInSourceOrder) {
  Design d = ParseDesign(
      "design d { inputs 1; if (in[0] == 77 or in[0] == 5) { output(77); } }");
  EXPECT_EQ(d.params.literals, (std::vector<Word>{77, 5}));
}

TEST(Dsl, CorpusRoundTripIsFixedPoint) {
  for (const BenchmarkEntry& e : BuiltinSuite()) {
    std::string once = PrintDesign(e.dut);
    std::string twice = PrintDesign(ParseDesign(once));
    EXPECT_EQ(once, twice) << e.name;
    EXPECT_EQ(AllEdges(e.dut).size(), 2u * e.dut.branch_count) << e.name;
  }
}

TEST(DslProperty, ParseIsDeterministicAndRoundTrips) {
  testing::DesignGenerator gen(7);
  for (int i = 0; i < 300; ++i) {
    std::string src = gen.Source();
    Design a = ParseDesign(src);
    Design b = ParseDesign(src);
    std::string pa = PrintDesign(a);
    ASSERT_EQ(pa, PrintDesign(b)) << src;
    ASSERT_EQ(a.branch_count, b.branch_count);
    ASSERT_EQ(pa, PrintDesign(ParseDesign(pa))) << src;
    ASSERT_EQ(AllEdges(a).size(), 2u * a.branch_count);
  }
}

}  // namespace
}  // namespace fuce
