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

#ifndef PROCQA_AUGMENT_AUGMENT_HPP_
#define PROCQA_AUGMENT_AUGMENT_HPP_

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "procqa/backend/client.hpp"
#include "procqa/backend/filter.hpp"

namespace procqa::augment {

enum class Method { kParaphrase, kAnswerBased };

std::string_view to_string(Method method);

// A realized QA pair to augment from.
struct SourceQa {
  std::string id;
  // Recipe text the pair was generated from.
  std::string context;
  std::string question;
  std::string answer;
};

// A new QA pair. The answer is copied from the source.
struct AugmentedQa {
  std::string id;
  std::string source_id;
  Method method = Method::kParaphrase;
  std::string question;
  std::string answer;
  // Round-trip score, answer-based only.
  std::optional<double> score;
};

// One audit line per candidate question the backend returned, kept or not.
struct AugmentationRecord {
  std::string source_id;
  Method method = Method::kParaphrase;
  std::string question;
  // "kept", "duplicate", "filtered" or "skipped".
  std::string verdict;
  // Round-trip score, answer-based only.
  std::optional<double> score;
  std::string backend;
  // Backend failure message for "skipped".
  std::string error;
};

nlohmann::json to_json(const AugmentationRecord& record);

struct AugmentResult {
  std::vector<AugmentedQa> added;
  std::vector<AugmentationRecord> audit;
};

// Case-folded, whitespace-collapsed, trailing punctuation removed. Two
// questions are the same question when their normalized forms match.
std::string normalize_question(std::string_view text);

struct ParaphraseOptions {
  int k = 5;
};

// Asks for k paraphrases per source question; drops ones that normalize to
// the source or to an earlier paraphrase. Added ids are "<source>#p<i>".
AugmentResult paraphrase_augment(const std::vector<SourceQa>& sources,
                                 const backend::BackendClient& client,
                                 const ParaphraseOptions& options = {});

struct AnswerBasedOptions {
  int n_per_answer = 3;
  backend::FilterOptions filter;
};

// Generates questions for each distinct (context, answer) pair and keeps
// those that pass the round-trip filter. Added ids are "<source>#a<i>".
AugmentResult answer_based_augment(const std::vector<SourceQa>& sources,
                                   const backend::BackendClient& client,
                                   const AnswerBasedOptions& options = {});

}  // namespace procqa::augment

#endif  // PROCQA_AUGMENT_AUGMENT_HPP_
