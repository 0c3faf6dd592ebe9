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

#include "procqa/backend/filter.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "support/fake_backend.hpp"
#include "support/metrics_oracle.hpp"
#include "support/stub_server.hpp"

namespace procqa::backend {
namespace {

using testing::FakeBackend;

// Answers each question from a fixed table.
void answer_from(FakeBackend& fake, std::map<std::string, std::string> answers) {
  fake.on_answer = [answers = std::move(answers)](std::string_view, std::string_view q) {
    auto it = answers.find(std::string(q));
    if (it == answers.end()) {
      throw BackendError(BackendError::Kind::kTimeout, "no answer for " + std::string(q));
    }
    return it->second;
  };
}

TEST(RoundTripFilter, KeepsOnlyConsistentPairs) {
  FakeBackend fake;
  answer_from(fake, {{"q1", "Mash potatoes."}, {"q2", "bake the bread"}});
  std::vector<QaText> pairs = {{"ctx", "q1", "mash potatoes"}, {"ctx", "q2", "chopped carrots"}};
  auto verdicts = round_trip_filter(pairs, fake);
  ASSERT_EQ(verdicts.size(), 2u);
  EXPECT_TRUE(verdicts[0].kept);
  EXPECT_DOUBLE_EQ(verdicts[0].score, 1.0);
  EXPECT_EQ(verdicts[0].predicted, "Mash potatoes.");
  EXPECT_FALSE(verdicts[1].kept);
  EXPECT_DOUBLE_EQ(verdicts[1].score, 0.0);
}

TEST(RoundTripFilter, ThresholdIsStrict) {
  FakeBackend fake;
  answer_from(fake, {{"q", "carrots and turnips"}});
  std::vector<QaText> pairs = {{"ctx", "q", "chopped carrots and turnips"}};
  const double score = round_trip_filter(pairs, fake).front().score;
  EXPECT_NEAR(score, 6.0 / 7.0, 1e-9);
  EXPECT_FALSE(round_trip_filter(pairs, fake, {.threshold = score}).front().kept);
  EXPECT_TRUE(round_trip_filter(pairs, fake, {.threshold = std::nextafter(score, 0.0)}).front().kept);
}

TEST(RoundTripFilter, BackendErrorsSkipOnlyThatPair) {
  FakeBackend fake;
  answer_from(fake, {{"q1", "salt"}, {"q3", "salt"}});
  std::vector<QaText> pairs = {{"c", "q1", "salt"}, {"c", "q2", "salt"}, {"c", "q3", "salt"}};
  auto verdicts = round_trip_filter(pairs, fake);
  EXPECT_TRUE(verdicts[0].kept);
  EXPECT_FALSE(verdicts[1].kept);
  EXPECT_EQ(verdicts[1].skipped, BackendError::Kind::kTimeout);
  EXPECT_FALSE(verdicts[1].error.empty());
  EXPECT_TRUE(verdicts[2].kept);
}

std::vector<QaText> random_pairs(std::mt19937_64& rng, std::map<std::string, std::string>& table) {
  std::vector<QaText> pairs;
  for (int i = 0; i < 40; ++i) {
    auto texts = testing::random_corpus(rng);
    texts.resize(2);
    const std::string q = "q" + std::to_string(i);
    table[q] = texts[0];
    pairs.push_back({"ctx", q, texts[1]});
  }
  return pairs;
}

// Raising the threshold never keeps a pair that a lower threshold dropped.
TEST(RoundTripFilter, MonotoneInThreshold) {
  std::mt19937_64 rng(23);
  std::map<std::string, std::string> table;
  auto pairs = random_pairs(rng, table);
  FakeBackend fake;
  answer_from(fake, table);
  std::vector<bool> previous(pairs.size(), true);
  for (double t : {-0.01, 0.0, 0.1, 0.25, 0.5, 0.75, 0.99, 1.0}) {
    auto verdicts = round_trip_filter(pairs, fake, {.threshold = t});
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (verdicts[i].kept) ASSERT_TRUE(previous[i]) << "t=" << t << " pair " << i;
      previous[i] = verdicts[i].kept;
    }
  }
}

TEST(RoundTripFilter, WorkersDoNotChangeVerdicts) {
  std::mt19937_64 rng(29);
  std::map<std::string, std::string> table;
  auto pairs = random_pairs(rng, table);
  FakeBackend fake;
  answer_from(fake, table);
  auto serial = round_trip_filter(pairs, fake);
  auto parallel = round_trip_filter(pairs, fake, {.workers = 4});
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].kept, parallel[i].kept);
    EXPECT_EQ(serial[i].score, parallel[i].score);
    EXPECT_EQ(serial[i].predicted, parallel[i].predicted);
  }
}

TEST(RoundTripFilter, OverHttpStub) {
  testing::StubServer server;
  server.post("/v1/answer", [](const nlohmann::json& req, httplib::Response& res) {
    const bool known = req.at("question").get<std::string>() == "What do we mash?";
    res.set_content(nlohmann::json{{"answer", known ? "the potatoes" : "no idea"}}.dump(),
                    "application/json");
  });
  server.start();
  BackendConfig config;
  config.endpoint = server.endpoint();
  config.backoff_ms = 1;
  auto client = http_client(config);
  std::vector<QaText> pairs = {{"Mash the potatoes.", "What do we mash?", "potatoes"},
                               {"Mash the potatoes.", "What do we bake?", "potatoes"}};
  auto verdicts = round_trip_filter(pairs, *client, {.threshold = 0.25, .workers = 2});
  EXPECT_TRUE(verdicts[0].kept);
  EXPECT_NEAR(verdicts[0].score, 2.0 / 3.0, 1e-12);
  EXPECT_FALSE(verdicts[1].kept);
}

}  // namespace
}  // namespace procqa::backend
