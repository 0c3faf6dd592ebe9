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

#include "procqa/amr/phrase.hpp"

#include <gtest/gtest.h>

#include "procqa/amr/penman.hpp"
#include "support/fixtures.hpp"

namespace procqa::amr {
namespace {

TEST(NounPhrase, HeadModifiersAndQuantity) {
  Graph g = noun_phrase_graph("two chopped onions");
  EXPECT_TRUE(isomorphic(g, parse_penman("(o / onion :quant 2 :ARG1-of (c / chop-01))")))
      << serialize_penman(g);
  EXPECT_TRUE(isomorphic(noun_phrase_graph("the vegetables"),
                         parse_penman("(v / vegetable)")));
  EXPECT_TRUE(isomorphic(noun_phrase_graph("grated cheddar cheese"),
                         parse_penman("(c / cheese :mod (c2 / cheddar) :ARG1-of (g / grate-01))")));
}

TEST(NounPhrase, EmptyPhraseBecomesThing) {
  EXPECT_EQ(noun_phrase_graph("the").root_concept(), "thing");
}

TEST(Conjoin, BuildsAndCompound) {
  Graph g = conjoin({noun_phrase_graph("chopped carrots"), noun_phrase_graph("turnips")});
  EXPECT_EQ(g.root_concept(), "and");
  EXPECT_EQ(linearize(g), "chopped carrot and turnip");
  g.validate();
}

TEST(Linearize, InstructionGraphs) {
  EXPECT_EQ(linearize(testing::golden_graph("next-answer-mash")),
            "mash potato with butter and salt");
  EXPECT_EQ(linearize(testing::golden_graph("cook-soup")),
            "cook chicken and other ingredient in pot for 20 minutes over medium heat "
            "to prepare soup");
  EXPECT_EQ(linearize(parse_penman("(a / amr-unknown)")), "");
}

TEST(Linearize, CyclesTerminate) {
  Graph g = testing::golden_graph("prev-before-spread");
  EXPECT_FALSE(linearize(g).empty());
}

TEST(Words, Morphology) {
  EXPECT_EQ(singularize("potatoes"), "potato");
  EXPECT_EQ(singularize("berries"), "berry");
  EXPECT_EQ(singularize("couscous"), "couscous");
  EXPECT_EQ(pluralize("minute"), "minutes");
  EXPECT_EQ(gerund("chop"), "chopping");
  EXPECT_EQ(gerund("bake"), "baking");
  EXPECT_EQ(gerund("mash"), "mashing");
  EXPECT_EQ(gerund("spread"), "spreading");
  EXPECT_EQ(past_participle("chop"), "chopped");
  EXPECT_EQ(past_participle("grate"), "grated");
  EXPECT_EQ(participle_stem("chopped"), "chop");
  EXPECT_EQ(participle_stem("grated"), "grate");
  EXPECT_EQ(participle_stem("mashed"), "mash");
  EXPECT_EQ(participle_stem("coated"), "coat");
  EXPECT_EQ(participle_stem("diced"), "dice");
}

}  // namespace
}  // namespace procqa::amr
