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

#include "procqa/backend/realizer.hpp"

#include <gtest/gtest.h>

#include <cctype>
#include <fstream>

#include "procqa/amr/penman.hpp"
#include "procqa/flow/flowgraph.hpp"
#include "procqa/qgen/lexicon.hpp"
#include "procqa/qgen/single.hpp"
#include "procqa/qgen/temporal.hpp"
#include "support/fake_backend.hpp"
#include "support/fixtures.hpp"

namespace procqa::backend {
namespace {

using qgen::Category;
using qgen::QaCandidate;

QaCandidate candidate(const std::string& question, Category category) {
  QaCandidate c;
  c.question_amr = amr::parse_penman(question);
  c.category = category;
  c.answer_text = "x";
  return c;
}

TEST(FallbackQuestion, WhWordFollowsTheUnknownRole) {
  const std::string base = "(c / cook-01 :mode imperative :ARG0 (y / you) :ARG1 (r / rice) ";
  EXPECT_EQ(fallback_question(candidate(base + ":location (a / amr-unknown))", Category::kRoleSpecific)),
            "Where do you cook rice?");
  EXPECT_EQ(fallback_question(candidate(base + ":duration (a / amr-unknown))", Category::kRoleSpecific)),
            "How long do you cook rice?");
  EXPECT_EQ(fallback_question(candidate(base + ":instrument (a / amr-unknown))", Category::kRoleSpecific)),
            "With what do you cook rice?");
  EXPECT_EQ(fallback_question(candidate(
                "(c / cook-01 :ARG0 (w / we) :ARG1 (a / amr-unknown) :location (p / pot))",
                Category::kRoleSpecific)),
            "What do we cook in pot?");
  EXPECT_EQ(fallback_question(candidate(
                base + ":duration (t / temporal-quantity :quant (a / amr-unknown) :unit (m / minute)))",
                Category::kRoleSpecific)).substr(0, 26),
            "How long do you cook rice ");
}

TEST(FallbackQuestion, InstructionAndPolarityShapes) {
  EXPECT_EQ(fallback_question(candidate("(c / cook-01 :ARG1 (r / rice) :manner (a / amr-unknown))",
                                        Category::kInstructionHow)),
            "How do you cook rice?");
  EXPECT_EQ(fallback_question(candidate(
                "(d / do-02 :ARG0 (y / you) :ARG1 (a / amr-unknown) :ARG2 (c / chicken))",
                Category::kInstructionWhatWith)),
            "What do you do with chicken?");
  EXPECT_EQ(fallback_question(candidate(
                "(a2 / add-02 :ARG0 (w / we) :ARG1 (s / salt) :polarity (a / amr-unknown))",
                Category::kPolarityYes)),
            "Do we add salt?");
  EXPECT_EQ(fallback_question(candidate(
                "(a2 / add-02 :ARG0 (i / i) :ARG1 (s / salt) :polarity (a / amr-unknown))",
                Category::kPolarityNo)),
            "Do I add salt?");
}

TEST(FallbackQuestion, TemporalFillsTheSurface) {
  QaCandidate c = candidate("(d / do-02 :ARG1 (a / amr-unknown))", Category::kTemporalOrder);
  c.template_info = qgen::TemplateInfo{"order-choice", "First, {1}, or {2}?", {"stir it", "bake it"}};
  EXPECT_EQ(fallback_question(c), "First, stir it, or bake it?");
  c.template_info.reset();
  EXPECT_THROW(fallback_question(c), RealizeError);
}

TEST(FallbackQuestion, MissingUnknownThrows) {
  EXPECT_THROW(fallback_question(candidate("(c / cook-01)", Category::kRoleSpecific)), RealizeError);
}

TEST(FallbackAnswer, Precedence) {
  QaCandidate c = candidate("(c / cook-01 :location (a / amr-unknown))", Category::kRoleSpecific);
  c.answer_text.reset();
  c.answer_amr = amr::parse_penman("(p / pot :mod (b / big))");
  EXPECT_EQ(fallback_answer(c), "big pot");
  c.answer_hint = "A big pot.";
  EXPECT_EQ(fallback_answer(c), "A big pot.");
  c.answer_text = "The pot.";
  EXPECT_EQ(fallback_answer(c), "The pot.");
  c.answer_text.reset();
  c.answer_hint.reset();
  c.answer_amr.reset();
  EXPECT_THROW(fallback_answer(c), RealizeError);
}

const std::string kCookSentence =
    "Cook chicken and other ingredients in the pot over medium heat for 20 minutes to prepare "
    "the soup.";

// Offline text for every cooking-sentence candidate, frozen in golden/cook_fallback.tsv
// as label, question and answer per line.
TEST(RealizeOffline, CookSentenceGolden) {
  auto lex = qgen::load_lexicons(testing::data_path("lexicons"));
  qgen::SentenceInput input{"cook", 0, kCookSentence, testing::golden_graph("cook-soup")};
  auto result = qgen::gen_single_questions(input, {}, lex, 1);
  std::ifstream golden(testing::fixture_path("golden/cook_fallback.tsv"));
  ASSERT_TRUE(golden);
  std::vector<std::string> lines;
  for (std::string line; std::getline(golden, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), result.candidates.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto& c = result.candidates[i];
    realize_offline(c);
    EXPECT_EQ(c.label() + "\t" + *c.question_text + "\t" + *c.answer_text, lines[i]);
  }
  // Realizing twice gives the same text.
  auto again = qgen::gen_single_questions(input, {}, lex, 1).candidates.at(4);
  realize_offline(again);
  EXPECT_EQ(again.question_text, result.candidates.at(4).question_text);
  EXPECT_TRUE(again.question_text->starts_with("Where do you cook chicken"));
}

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

std::vector<qgen::SentenceInput> shepherds_pie_inputs() {
  std::ifstream in(testing::fixture_path("corpus/amr/shepherds-pie.penman"));
  std::vector<qgen::SentenceInput> out;
  for (auto& b : amr::read_penman_blocks(in)) {
    const std::string id = b.meta("id");
    out.push_back({"shepherds-pie", std::stoi(id.substr(id.rfind('.') + 1)), b.meta("snt"),
                   amr::parse_penman(b.text)});
  }
  return out;
}

// Every candidate the generators produce for the fixture recipe realizes
// offline into a question and an answer.
TEST(RealizeOffline, CoversEveryGeneratedCandidate) {
  auto lex = qgen::load_lexicons(testing::data_path("lexicons"));
  auto inputs = shepherds_pie_inputs();
  std::vector<amr::Graph> pool;
  for (const auto& s : inputs) pool.push_back(s.amr);
  std::vector<QaCandidate> all;
  for (const auto& s : inputs) {
    auto res = qgen::gen_single_questions(s, pool, lex, 5);
    all.insert(all.end(), res.candidates.begin(), res.candidates.end());
  }
  auto flow = flow::load_flowgraph(testing::fixture_path("corpus/flow/shepherds-pie.json"));
  auto temporal = qgen::gen_temporal_questions(
      "shepherds-pie", flow, qgen::load_templates(testing::data_path("templates/temporal.penman")),
      qgen::extract_action_amrs(flow, testing::corpus_amrs("shepherds-pie")));
  ASSERT_FALSE(temporal.empty());
  all.insert(all.end(), temporal.begin(), temporal.end());
  for (auto& c : all) {
    realize_offline(c);
    ASSERT_NO_THROW(qgen::check_realized(c)) << c.label();
    EXPECT_TRUE(c.fallback_realized);
    EXPECT_TRUE(c.question_text->ends_with("?")) << *c.question_text;
    EXPECT_TRUE(std::isupper(static_cast<unsigned char>(c.question_text->front())))
        << *c.question_text;
    EXPECT_EQ(c.question_text->find('{'), std::string::npos) << *c.question_text;
    EXPECT_FALSE(c.answer_text->empty()) << c.label();
  }
}

TEST(RealizeOffline, PolarityAndOrderShapes) {
  auto flow = flow::load_flowgraph(testing::fixture_path("corpus/flow/shepherds-pie.json"));
  auto templates = qgen::load_templates(testing::data_path("templates/temporal.penman"));
  auto actions = qgen::extract_action_amrs(flow, testing::corpus_amrs("shepherds-pie"));
  auto order = qgen::gen_order_questions("shepherds-pie", flow, templates, actions);
  ASSERT_FALSE(order.empty());
  for (auto& c : order) {
    realize_offline(c);
    const std::string q = lower(*c.question_text);
    EXPECT_NE(q.find("first"), std::string::npos) << q;
    ASSERT_EQ(c.template_info->slot_texts.size(), 2u);
    for (const auto& slot : c.template_info->slot_texts) {
      const std::string lemma = slot.substr(0, slot.find(' '));
      EXPECT_NE(q.find(lemma), std::string::npos) << q << " lacks " << lemma;
    }
  }
  for (const auto& s : shepherds_pie_inputs()) {
    auto yes = qgen::gen_polarity_questions(s, {}, 3).yes;
    realize_offline(yes);
    EXPECT_TRUE(yes.question_text->ends_with("?"));
    EXPECT_NE(yes.question_text->find(amr::concept_lemma(s.amr.root_concept())), std::string::npos)
        << *yes.question_text;
  }
}

TEST(RealizeWith, SendsSingleLinePenman) {
  testing::FakeBackend fake;
  std::vector<std::string> sent;
  fake.on_to_text = [&sent](std::string_view p) {
    sent.emplace_back(p);
    return "Where do you cook the rice?";
  };
  QaCandidate c = candidate("(c / cook-01 :ARG1 (r / rice) :location (a / amr-unknown))",
                            Category::kRoleSpecific);
  c.answer_text.reset();
  c.answer_amr = amr::parse_penman("(p / pot)");
  realize_with(c, fake);
  ASSERT_EQ(sent.size(), 2u);
  EXPECT_EQ(sent[0].find('\n'), std::string::npos);
  EXPECT_EQ(amr::parse_penman(sent[1]), amr::parse_penman("(p / pot)"));
  EXPECT_EQ(c.question_text, "Where do you cook the rice?");
  EXPECT_FALSE(c.fallback_realized);

  // An existing answer text is kept and not sent.
  QaCandidate yes = candidate("(c / cook-01 :polarity (a / amr-unknown))", Category::kPolarityYes);
  yes.answer_text = "Yes";
  realize_with(yes, fake);
  EXPECT_EQ(sent.size(), 3u);
  EXPECT_EQ(yes.answer_text, "Yes");
}

TEST(RealizeWith, BackendErrorsPropagate) {
  testing::FakeBackend fake;
  QaCandidate c = candidate("(c / cook-01 :location (a / amr-unknown))", Category::kRoleSpecific);
  EXPECT_THROW(realize_with(c, fake), BackendError);
  EXPECT_FALSE(c.question_text.has_value());
}

}  // namespace
}  // namespace procqa::backend
