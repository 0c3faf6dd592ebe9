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

#include "procqa/augment/augment.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <map>
#include <random>
#include <set>

#include "support/fake_backend.hpp"
#include "support/metrics_oracle.hpp"

namespace procqa::augment {
namespace {

using testing::FakeBackend;
using Strings = std::vector<std::string>;

TEST(NormalizeQuestion, FoldsCaseSpaceAndFinalPunctuation) {
  EXPECT_EQ(normalize_question("  What  do we ADD?? "), "what do we add");
  EXPECT_EQ(normalize_question("What do we add ?"), "what do we add");
  EXPECT_EQ(normalize_question("Don't stir, right?"), "don't stir, right");
  EXPECT_EQ(normalize_question(""), "");
}

TEST(Paraphrase, DropsCopiesOfTheSourceAndEachOther) {
  FakeBackend fake;
  int asked_k = 0;
  fake.on_paraphrase = [&asked_k](std::string_view, int k) {
    asked_k = k;
    return Strings{"what do WE add", "Which items go in?", "which items go in ?", "Name what we add."};
  };
  std::vector<SourceQa> sources = {{"r.0", "ctx", "What do we add?", "Oil."}};
  auto result = paraphrase_augment(sources, fake);
  EXPECT_EQ(asked_k, 5);
  ASSERT_EQ(result.added.size(), 2u);
  EXPECT_EQ(result.added[0].id, "r.0#p0");
  EXPECT_EQ(result.added[0].question, "Which items go in?");
  EXPECT_EQ(result.added[0].answer, "Oil.");
  EXPECT_EQ(result.added[0].source_id, "r.0");
  EXPECT_EQ(result.added[1].id, "r.0#p1");
  ASSERT_EQ(result.audit.size(), 4u);
  Strings verdicts;
  for (const auto& a : result.audit) verdicts.push_back(a.verdict);
  EXPECT_EQ(verdicts, (Strings{"duplicate", "kept", "duplicate", "kept"}));
  EXPECT_EQ(result.audit[1].backend, "fake");
  EXPECT_FALSE(result.audit[1].score.has_value());
}

TEST(Paraphrase, BackendFailureSkipsOneSource) {
  FakeBackend fake;
  fake.on_paraphrase = [](std::string_view q, int) -> Strings {
    if (q == "bad") throw backend::BackendError(backend::BackendError::Kind::kTransport, "down");
    return {"Another question?"};
  };
  auto result = paraphrase_augment({{"a", "c", "bad", "x"}, {"b", "c", "good", "y"}}, fake, {.k = 1});
  ASSERT_EQ(result.added.size(), 1u);
  EXPECT_EQ(result.added[0].source_id, "b");
  ASSERT_EQ(result.audit.size(), 2u);
  EXPECT_EQ(result.audit[0].verdict, "skipped");
  EXPECT_EQ(result.audit[0].error, "down");
}

// Every returned paraphrase is audited exactly once, and additions are
// pairwise distinct and distinct from their source after normalization.
TEST(Paraphrase, RandomOutputsInvariants) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto questions = testing::random_corpus(rng);
    std::map<std::string, Strings> outputs;
    std::vector<SourceQa> sources;
    std::size_t returned = 0;
    for (std::size_t i = 0; i < questions.size(); ++i) {
      auto para = testing::random_corpus(rng);
      if (!para.empty() && rng() % 2) para.push_back(questions[i] + " ?");
      outputs.emplace(questions[i], para);
      returned += outputs.at(questions[i]).size();
      sources.push_back({"s" + std::to_string(i), "ctx", questions[i], "a"});
    }
    FakeBackend fake;
    fake.on_paraphrase = [&outputs](std::string_view q, int) { return outputs.at(std::string(q)); };
    auto result = paraphrase_augment(sources, fake);
    ASSERT_EQ(result.audit.size(), returned);
    std::map<std::string, std::set<std::string>> per_source;
    for (const auto& a : result.added) {
      const auto& src = sources[std::stoul(a.source_id.substr(1))];
      ASSERT_NE(normalize_question(a.question), normalize_question(src.question));
      ASSERT_TRUE(per_source[a.source_id].insert(normalize_question(a.question)).second);
    }
  }
}

TEST(AnswerBased, RoundTripFilterDecides) {
  FakeBackend fake;
  int asked_n = 0;
  fake.on_questions = [&asked_n](std::string_view, std::string_view, int n) {
    asked_n = n;
    return Strings{"What do we mash?", "What do we bake?", "Where is the pan?"};
  };
  fake.on_answer = [](std::string_view, std::string_view q) -> std::string {
    if (q == "What do we mash?") return "the potatoes";
    if (q == "Where is the pan?") return "potatoes";
    return "bread";
  };
  std::vector<SourceQa> sources = {{"r.1", "Mash the potatoes.", "What do you mash?", "Potatoes."}};
  auto result = answer_based_augment(sources, fake);
  EXPECT_EQ(asked_n, 3);
  ASSERT_EQ(result.added.size(), 2u);
  EXPECT_EQ(result.added[0].id, "r.1#a0");
  EXPECT_EQ(result.added[0].question, "What do we mash?");
  EXPECT_EQ(result.added[0].answer, "Potatoes.");
  EXPECT_EQ(result.added[1].id, "r.1#a1");
  ASSERT_EQ(result.audit.size(), 3u);
  EXPECT_EQ(result.audit[1].verdict, "filtered");
  EXPECT_DOUBLE_EQ(*result.audit[1].score, 0.0);
  EXPECT_NEAR(*result.audit[0].score, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(to_json(result.audit[1]).at("method"), "answer_based");
}

TEST(AnswerBased, OneRequestPerDistinctAnswerAndNoRepeats) {
  FakeBackend fake;
  int requests = 0;
  fake.on_questions = [&requests](std::string_view, std::string_view, int) {
    ++requests;
    return Strings{"What do you mash?", "What gets mashed?"};
  };
  fake.on_answer = [](std::string_view, std::string_view) { return "potatoes"; };
  std::vector<SourceQa> sources = {{"a", "ctx", "What do you mash?", "Potatoes."},
                                   {"b", "ctx", "Which vegetable is mashed?", "potatoes"},
                                   {"c", "other", "What do you mash?", "Potatoes."}};
  auto result = answer_based_augment(sources, fake, {.n_per_answer = 2});
  EXPECT_EQ(requests, 2);
  // The existing source question comes back as a duplicate for both contexts.
  ASSERT_EQ(result.added.size(), 2u);
  EXPECT_EQ(result.added[0].source_id, "a");
  EXPECT_EQ(result.added[1].source_id, "c");
  std::size_t duplicates = 0;
  for (const auto& r : result.audit) duplicates += r.verdict == "duplicate";
  EXPECT_EQ(duplicates, 2u);
}

TEST(AnswerBased, FilterFailureIsAuditedAsSkipped) {
  FakeBackend fake;
  fake.on_questions = [](std::string_view, std::string_view, int) {
    return Strings{"What do we mash?"};
  };
  auto result = answer_based_augment({{"a", "ctx", "Q?", "Potatoes."}}, fake);
  EXPECT_TRUE(result.added.empty());
  ASSERT_EQ(result.audit.size(), 1u);
  EXPECT_EQ(result.audit[0].verdict, "skipped");
  EXPECT_FALSE(result.audit[0].score.has_value());
}

}  // namespace
}  // namespace procqa::augment
