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

#ifndef PROCQA_PIPELINE_RECORD_HPP_
#define PROCQA_PIPELINE_RECORD_HPP_

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "procqa/pipeline/recipe.hpp"
#include "procqa/qgen/candidate.hpp"

namespace procqa::pipeline {

// One emitted QA pair.
struct DatasetRecord {
  // "<recipe>/<category>/<n>" for generated pairs; augmented pairs append
  // "#p<i>" or "#a<i>" to their source id.
  std::string id;
  std::string recipe_id;
  std::string question;
  std::string answer;
  qgen::Category category = qgen::Category::kRoleSpecific;
  std::string role;
  // Single-line PENMAN; empty for augmented pairs.
  std::string question_amr;
  std::optional<std::string> answer_amr;
  std::vector<int> sentences;
  std::optional<int> answer_sentence;
  std::optional<std::string> template_id;
  // "neural" or "fallback".
  std::string realizer;
  // "generated", "paraphrase" or "answer_based".
  std::string method = "generated";
  std::optional<std::string> source_id;
  std::optional<double> filter_score;
  std::optional<std::string> backend;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

// Builds a record from a realized candidate. Throws qgen::CandidateError if
// the candidate is not realized.
DatasetRecord record_from_candidate(const qgen::QaCandidate& candidate, std::string id);

nlohmann::json to_json(const DatasetRecord& record);
// Throws PipelineError(kSchemaViolation).
DatasetRecord record_from_json(const nlohmann::json& j);
// Emission self-check: non-empty texts, known realizer and method, parseable
// question PENMAN with exactly one amr-unknown for generated pairs, source id
// and no question PENMAN on augmented pairs. Throws PipelineError(kSchemaViolation).
void check_record(const DatasetRecord& record);

// One JSON object per line, keys in a fixed order.
void write_jsonl(std::ostream& out, const std::vector<DatasetRecord>& records);
// Throws PipelineError(kFileNotFound); bad lines become diagnostics.
std::vector<DatasetRecord> read_jsonl(const std::filesystem::path& path,
                                      std::vector<Diagnostic>* diagnostics = nullptr);

// Checks every line of a dataset file, including id uniqueness.
std::vector<Diagnostic> validate_dataset(const std::filesystem::path& path);

}  // namespace procqa::pipeline

#endif  // PROCQA_PIPELINE_RECORD_HPP_
