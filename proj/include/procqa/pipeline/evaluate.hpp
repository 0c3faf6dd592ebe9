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

#ifndef PROCQA_PIPELINE_EVALUATE_HPP_
#define PROCQA_PIPELINE_EVALUATE_HPP_

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "procqa/metrics/corpus.hpp"

namespace procqa::pipeline {

// Reads "question" (and "id" when present) from each JSONL line. Lines
// without an id are named "line<N>". Throws PipelineError.
std::vector<metrics::Question> load_questions(const std::filesystem::path& path);

struct EvalReport {
  metrics::DiversityReport diversity;
  std::optional<metrics::CoverageReport> coverage;
};

// Diversity of `generated`; coverage as well when a reference set is given.
// Throws metrics::MetricsError on empty sets or an unknown scorer.
EvalReport evaluate(const std::vector<metrics::Question>& generated,
                    const std::optional<std::vector<metrics::Question>>& reference,
                    const std::string& scorer = "rouge1");

nlohmann::json to_json(const EvalReport& report);

}  // namespace procqa::pipeline

#endif  // PROCQA_PIPELINE_EVALUATE_HPP_
