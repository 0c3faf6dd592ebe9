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

#ifndef PROCQA_PIPELINE_CONFIG_HPP_
#define PROCQA_PIPELINE_CONFIG_HPP_

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "procqa/backend/client.hpp"
#include "procqa/metrics/scorers.hpp"

namespace procqa::pipeline {

struct Stages {
  bool single = true;
  bool temporal = true;
  bool paraphrase = false;
  bool answer_based = false;
};

// Text the round-trip filter answers from.
enum class FilterContext { kRecipe, kSentence };

struct PipelineConfig {
  Stages stages;
  std::optional<backend::BackendConfig> backend;
  // Never contact the backend, even when one is configured.
  bool offline = false;

  std::filesystem::path recipes;
  // Sidecar PENMAN file or directory; sentences without one are parsed by
  // the backend when available.
  std::filesystem::path amr;
  // Directory holding <recipe id>.json flow graphs.
  std::filesystem::path flow_dir;
  std::filesystem::path lexicon_dir;
  std::filesystem::path templates;

  std::optional<std::uint64_t> seed;
  double threshold = 0.25;
  metrics::FMode filter_mode = metrics::FMode::kF1;
  FilterContext filter_context = FilterContext::kRecipe;
  int paraphrase_k = 5;
  int n_per_answer = 3;
  // Recipes processed concurrently.
  int workers = 1;

  std::filesystem::path dataset_out;
  // Optional; augmentation audit lines and the run summary.
  std::filesystem::path audit_out;
  std::filesystem::path summary_out;

  bool wants_backend() const { return stages.paraphrase || stages.answer_based; }

  // Throws PipelineError(kBadConfig).
  void check() const;
};

// Relative paths resolve against `base_dir`. Missing keys keep defaults;
// lexicon_dir and templates default to the shipped data directory.
// Throws PipelineError(kBadConfig).
PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
// Throws PipelineError(kFileNotFound) or kBadConfig.
PipelineConfig load_config(const std::filesystem::path& path);

// Directory of the shipped lexicons and templates.
std::filesystem::path default_data_dir();

}  // namespace procqa::pipeline

#endif  // PROCQA_PIPELINE_CONFIG_HPP_
