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

#include "procqa/pipeline/evaluate.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

#include "procqa/metrics/scorers.hpp"
#include "procqa/pipeline/recipe.hpp"

namespace procqa::pipeline {

std::vector<metrics::Question> load_questions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PipelineError(PipelineError::Kind::kFileNotFound, "cannot open " + path.string());
  std::vector<metrics::Question> out;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no) + ": ";
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw PipelineError(PipelineError::Kind::kSchemaViolation, where + "not a JSON object");
    }
    auto q = j.find("question");
    if (q == j.end() || !q->is_string()) {
      throw PipelineError(PipelineError::Kind::kSchemaViolation, where + "'question' must be a string");
    }
    auto id = j.find("id");
    out.push_back({id != j.end() && id->is_string() ? id->get<std::string>()
                                                    : "line" + std::to_string(line_no),
                   q->get<std::string>()});
  }
  return out;
}

EvalReport evaluate(const std::vector<metrics::Question>& generated,
                    const std::optional<std::vector<metrics::Question>>& reference,
                    const std::string& scorer) {
  auto pair_scorer = metrics::make_scorer(scorer);
  EvalReport report;
  std::vector<std::string> texts;
  for (const auto& q : generated) texts.push_back(q.text);
  report.diversity = metrics::diversity_report(texts);
  if (reference) report.coverage = metrics::coverage(*reference, generated, *pair_scorer);
  return report;
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json j{{"diversity", metrics::to_json(report.diversity)}};
  j["coverage"] = report.coverage ? metrics::to_json(*report.coverage) : nlohmann::json(nullptr);
  return j;
}

}  // namespace procqa::pipeline
