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

#ifndef PROCQA_PIPELINE_RUN_HPP_
#define PROCQA_PIPELINE_RUN_HPP_

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "procqa/augment/augment.hpp"
#include "procqa/backend/client.hpp"
#include "procqa/pipeline/config.hpp"
#include "procqa/pipeline/recipe.hpp"
#include "procqa/pipeline/record.hpp"

namespace procqa::pipeline {

struct RunSummary {
  std::size_t recipes = 0;
  std::size_t records = 0;
  // Emitted generated records per category name.
  std::map<std::string, std::size_t> categories;
  // Per stage counters, e.g. stages["single"]["skipped"].
  std::map<std::string, std::map<std::string, std::size_t>> stages;
  std::vector<std::string> warnings;
  // Fatal problems; the dataset is not written when any are present.
  std::vector<std::string> errors;
  double wall_seconds = 0.0;

  int exit_code() const { return errors.empty() ? 0 : 1; }
};

nlohmann::json to_json(const RunSummary& summary);

// Generation for the recipes: AMR acquisition, single and temporal question
// generation, then realization (backend when given, else offline). Records
// come back in emission order. `client` may be null.
std::vector<DatasetRecord> generate(const PipelineConfig& config,
                                    const std::vector<RecipeDoc>& recipes,
                                    const SidecarAmrs& sidecar,
                                    const backend::BackendClient* client,
                                    RunSummary& summary);

// Runs the enabled augmentation stages over the generated records in
// `records` and merges the additions in emission order. A null or
// unreachable client marks every source skipped.
void augment_records(const PipelineConfig& config, const std::vector<RecipeDoc>& recipes,
                     const backend::BackendClient* client, bool client_healthy,
                     std::vector<DatasetRecord>& records,
                     std::vector<augment::AugmentationRecord>& audit, RunSummary& summary);

// Whole run: loads inputs, generates, augments, self-checks and writes the
// configured outputs. Configuration and input errors are reported in the
// summary rather than thrown. `client` overrides the configured backend.
RunSummary run(const PipelineConfig& config, const backend::BackendClient* client = nullptr);

// Augments the generated pairs of an existing dataset file with the enabled
// augmentation stages and writes the configured outputs. Pairs already
// augmented in `input` are dropped and regenerated.
RunSummary augment_dataset(const PipelineConfig& config, const std::filesystem::path& input,
                           const backend::BackendClient* client = nullptr);

}  // namespace procqa::pipeline

#endif  // PROCQA_PIPELINE_RUN_HPP_
