// Copyright 2026 The procqa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "procqa/amr/penman.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "support/fixtures.hpp"
#include "support/random_graph.hpp"

namespace procqa::amr {
namespace {

using ::procqa::testing::golden_graph;
using ::procqa::testing::golden_texts;

TEST(ParsePenman, CookInstructionGraph) {
  Graph g = golden_graph("cook-soup");
  EXPECT_EQ(g.root_concept(), "cook-01");
  EXPECT_EQ(g.node_count(), 13u);

  auto mode = g.find_edge(g.root(), ":mode");
  ASSERT_TRUE(mode.has_value());
  EXPECT_FALSE(g.edges()[*mode].targets_var());
  EXPECT_EQ(g.edges()[*mode].constant().value, "imperative");

  // `y` is the :ARG0 of both cook-01 and prepare-01.
  EXPECT_EQ(g.in_degree("y"), 2u);
  auto purpose = g.find_edge(g.root(), ":purpose");
  ASSERT_TRUE(purpose.has_value());
  auto inner = g.find_edge(g.edges()[*purpose].var(), ":ARG0");
  ASSERT_TRUE(inner.has_value());
  EXPECT_EQ(g.edges()[*inner].var(), "y");

  auto duration = g.find_edge(g.root(), ":duration");
  auto quant = g.find_edge(g.edges()[*duration].var(), ":quant");
  EXPECT_EQ(g.edges()[*quant].constant(), (Constant{"20", false}));
}

TEST(ParsePenman, MinimalGraph) {
  Graph g = parse_penman("(a / amr-unknown)");
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_TRUE(g.edges().empty());
  EXPECT_EQ(serialize_penman(g), "(a / amr-unknown)");
}

TEST(ParsePenman, MixSaltAndChicken) {
  Graph g = parse_penman("(m / mix-01 :ARG1 (s / salt) :ARG2 (c / chicken))");
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edges().size(), 2u);
}

TEST(ParsePenman, QuotedStringsAndAttributes) {
  Graph g = parse_penman(
      R"((c / city :name (n / name :op1 "New \"Big\" York") :quant 2.5))");
  auto name = g.find_edge("n", ":op1");
  ASSERT_TRUE(name);
  EXPECT_TRUE(g.edges()[*name].constant().quoted);
  EXPECT_EQ(g.edges()[*name].constant().value, "New \"Big\" York");
  Graph again = parse_penman(serialize_penman(g));
  EXPECT_EQ(again, g);
}

TEST(ParsePenman, AlignmentsAreStrippedWithWarning) {
  std::vector<std::string> warnings;
  Graph g = parse_penman("(c / cook-01~e.0 :ARG1 (r / rice~e.1))", &warnings);
  EXPECT_EQ(g.concept_of("c"), "cook-01");
  EXPECT_EQ(g.concept_of("r"), "rice");
  EXPECT_EQ(warnings.size(), 2u);
}

TEST(ParsePenman, ForwardReferenceResolves) {
  Graph g = parse_penman("(a / and :op1 y :op2 (b / bake-01 :ARG0 (y / you)))");
  EXPECT_EQ(g.in_degree("y"), 2u);
}

struct BadInput {
  const char* name;
  const char* text;
  PenmanError::Kind kind;
  std::size_t offset;
};

class ParsePenmanErrors : public ::testing::TestWithParam<BadInput> {};

TEST_P(ParsePenmanErrors, ReportsKindAndOffset) {
  const BadInput& bad = GetParam();
  try {
    parse_penman(bad.text);
    FAIL() << "expected an error for " << bad.text;
  } catch (const PenmanError& e) {
    EXPECT_EQ(e.kind(), bad.kind) << e.what();
    EXPECT_EQ(e.offset(), bad.offset) << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(
    Cases, ParsePenmanErrors,
    ::testing::Values(
        BadInput{"Empty", "", PenmanError::Kind::kEmptyInput, 0},
        BadInput{"Whitespace", "   \n ", PenmanError::Kind::kEmptyInput, 5},
        BadInput{"MissingClose", "(m / mix-01 :ARG1 (s / salt)", PenmanError::Kind::kUnbalancedParens, 28},
        BadInput{"ExtraClose", "(m / mix-01))", PenmanError::Kind::kUnbalancedParens, 12},
        BadInput{"Duplicate", "(m / mix-01 :ARG1 (m / salt))", PenmanError::Kind::kDuplicateVariableDefinition, 19},
        BadInput{"Dangling", "(m / mix-01 :ARG0 y)", PenmanError::Kind::kDanglingVariableReference, 18},
        BadInput{"MissingSlash", "(m mix-01)", PenmanError::Kind::kSyntax, 3}),
    [](const ::testing::TestParamInfo<BadInput>& info) { return info.param.name; });

TEST(SerializePenman, CookGraphMatchesGoldenModuloWhitespace) {
  auto squash = [](const std::string& s) {
    std::string out;
    bool space = false;
    for (char c : s) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        space = true;
        continue;
      }
      if (space && !out.empty() && c != ')') out.push_back(' ');
      space = false;
      out.push_back(c);
    }
    return out;
  };
  const std::string& text = golden_texts().at("cook-soup");
  EXPECT_EQ(squash(serialize_penman(parse_penman(text))), squash(text));
  EXPECT_EQ(squash(serialize_penman(parse_penman(text), {.indent = false})),
            squash(text));
}

TEST(SerializePenman, ReentrantVariableExpandsOnce) {
  Graph g = golden_graph("cook-soup");
  std::string text = serialize_penman(g, {.indent = false});
  EXPECT_NE(text.find(":ARG0 (y / you)"), std::string::npos);
  EXPECT_NE(text.find(":ARG0 y "), std::string::npos);
}

TEST(SerializePenman, UnreachableNodeIsRejected) {
  Graph g("a", "and");
  g.add_node("b", "orphan");
  EXPECT_THROW(serialize_penman(g), GraphError);
}

TEST(PenmanRoundTrip, EveryGoldenGraph) {
  for (const auto& [id, text] : golden_texts()) {
    Graph g = parse_penman(text);
    Graph back = parse_penman(serialize_penman(g));
    EXPECT_TRUE(isomorphic(g, back)) << id;
    EXPECT_EQ(back.concepts(), g.concepts()) << id;
  }
}

TEST(PenmanRoundTrip, RandomGraphs) {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 300; ++i) {
    Graph g = testing::random_graph(rng);
    g.validate();
    for (bool indent : {true, false}) {
      std::string text = serialize_penman(g, {.indent = indent});
      Graph back = parse_penman(text);
      ASSERT_TRUE(isomorphic(g, back)) << text;
      ASSERT_EQ(back.concepts(), g.concepts()) << text;
      ASSERT_EQ(serialize_penman(back, {.indent = indent}), text);
    }
  }
}

TEST(ReadPenmanBlocks, SplitsBlocksAndMetadata) {
  std::istringstream in(
      "# ::id r1.0 ::snt Cook rice.\n(c / cook-01 :ARG1 (r / rice))\n\n\n"
      "# ::id r1.1\n(s / stir-01\n  :ARG1 (s2 / soup))\n");
  auto blocks = read_penman_blocks(in);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].meta("id"), "r1.0");
  EXPECT_EQ(blocks[0].meta("snt"), "Cook rice.");
  EXPECT_EQ(blocks[1].meta("id"), "r1.1");
  EXPECT_EQ(blocks[1].line, 5u);
  EXPECT_EQ(parse_penman(blocks[1].text).node_count(), 2u);
}

}  // namespace
}  // namespace procqa::amr
