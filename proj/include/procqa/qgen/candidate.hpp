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

#ifndef PROCQA_QGEN_CANDIDATE_HPP_
#define PROCQA_QGEN_CANDIDATE_HPP_

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "procqa/amr/graph.hpp"

namespace procqa::qgen {

enum class Category {
  kRoleSpecific,
  kInstructionHow,
  kInstructionWhatWith,
  kPolarityYes,
  kPolarityNo,
  kTemporalMixture,
  kTemporalNext,
  kTemporalPrev,
  kTemporalOrder,
};

// "role_specific", "instruction_how", ... as used in the JSONL output.
std::string_view to_string(Category category);
std::optional<Category> parse_category(std::string_view name);
bool is_temporal(Category category);

struct Provenance {
  std::string recipe_id;
  // Sentences the question was built from, ascending.
  std::vector<int> sentences;
  // Sentence whose text answers the question, when there is one.
  std::optional<int> answer_sentence;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Set on temporal candidates built from a question template.
struct TemplateInfo {
  std::string id;
  std::string surface;
  std::vector<std::string> slot_texts;

  friend bool operator==(const TemplateInfo&, const TemplateInfo&) = default;
};

class CandidateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QaCandidate {
  amr::Graph question_amr;
  std::optional<amr::Graph> answer_amr;
  std::optional<std::string> answer_text;
  // Source wording of the answer ("Chopped carrots and turnips."), used by
  // the offline realizer. Not an answer field for check_candidate.
  std::optional<std::string> answer_hint;
  Category category = Category::kRoleSpecific;
  // Questioned role for role_specific candidates (":location"), else empty.
  std::string role;
  // Root role of the source graph the candidate came from. Differs from
  // `role` when a rule renamed the edge (:ARG2 asked as :location).
  std::string origin_role;
  Provenance provenance;
  std::optional<std::string> question_text;
  std::optional<TemplateInfo> template_info;
  // True when question_text came from the offline realizer.
  bool fallback_realized = false;

  // "role_specific(:location)" or the plain category name.
  std::string label() const;
};

// Checks the creation-time invariants: exactly one answer field, exactly one
// amr-unknown in the question. Throws CandidateError.
void check_candidate(const QaCandidate& candidate);
// After realization: both text fields present and the question unchanged in
// its single-unknown shape.
void check_realized(const QaCandidate& candidate);

nlohmann::json to_json(const QaCandidate& candidate);
// Throws CandidateError on a malformed record.
QaCandidate candidate_from_json(const nlohmann::json& record);

}  // namespace procqa::qgen

#endif  // PROCQA_QGEN_CANDIDATE_HPP_
