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

#include "procqa/pipeline/config.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>

#include "procqa/pipeline/recipe.hpp"

namespace procqa::pipeline {
namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw PipelineError(PipelineError::Kind::kBadConfig, "config: " + what);
}

void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) bad("'" + where + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) bad("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) {
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      bad(std::string("'") + key + "' has the wrong type");
    }
  }
}

void read_path(const json& j, const char* key, const std::filesystem::path& base,
               std::filesystem::path& out) {
  std::string s;
  read(j, key, s);
  if (!s.empty()) out = std::filesystem::path(s).is_absolute() ? std::filesystem::path(s) : base / s;
}

}  // namespace

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("PROCQA_DATA_DIR"); env && *env) return env;
  return PROCQA_DEFAULT_DATA_DIR;
}

void PipelineConfig::check() const {
  if (recipes.empty()) bad("inputs.recipes is required");
  if (dataset_out.empty()) bad("outputs.dataset is required");
  if (stages.single && !seed) bad("a seed is required when the single stage is enabled");
  if (threshold < 0.0 || threshold > 1.0) bad("filter.threshold must be in [0, 1]");
  if (paraphrase_k < 0) bad("augment.paraphrase_k must not be negative");
  if (n_per_answer < 0) bad("augment.n_per_answer must not be negative");
  if (workers < 1 || workers > 64) bad("workers must be in [1, 64]");
  if (stages.single && lexicon_dir.empty()) bad("resources.lexicons is required");
  if (stages.temporal && templates.empty()) bad("resources.templates is required");
  if (backend) {
    try {
      backend->check();
    } catch (const std::invalid_argument& e) {
      bad(e.what());
    }
  }
}

PipelineConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  only_keys(j, "config", {"stages", "backend", "offline", "inputs", "resources", "seed", "filter",
                          "augment", "workers", "outputs"});
  PipelineConfig c;
  c.lexicon_dir = default_data_dir() / "lexicons";
  c.templates = default_data_dir() / "templates" / "temporal.penman";

  if (auto s = j.find("stages"); s != j.end()) {
    only_keys(*s, "stages", {"single", "temporal", "paraphrase", "answer_based"});
    read(*s, "single", c.stages.single);
    read(*s, "temporal", c.stages.temporal);
    read(*s, "paraphrase", c.stages.paraphrase);
    read(*s, "answer_based", c.stages.answer_based);
  }
  if (auto b = j.find("backend"); b != j.end() && !b->is_null()) {
    try {
      c.backend = backend::backend_config_from_json(*b);
    } catch (const std::invalid_argument& e) {
      bad(e.what());
    }
  }
  read(j, "offline", c.offline);
  if (auto in = j.find("inputs"); in != j.end()) {
    only_keys(*in, "inputs", {"recipes", "amr", "flow_dir"});
    read_path(*in, "recipes", base_dir, c.recipes);
    read_path(*in, "amr", base_dir, c.amr);
    read_path(*in, "flow_dir", base_dir, c.flow_dir);
  }
  if (auto r = j.find("resources"); r != j.end()) {
    only_keys(*r, "resources", {"lexicons", "templates"});
    read_path(*r, "lexicons", base_dir, c.lexicon_dir);
    read_path(*r, "templates", base_dir, c.templates);
  }
  if (auto s = j.find("seed"); s != j.end() && !s->is_null()) {
    if (!s->is_number_integer() || (!s->is_number_unsigned() && s->get<std::int64_t>() < 0)) {
      bad("'seed' must be a non-negative integer");
    }
    c.seed = s->get<std::uint64_t>();
  }
  if (auto f = j.find("filter"); f != j.end()) {
    only_keys(*f, "filter", {"threshold", "mode", "context"});
    read(*f, "threshold", c.threshold);
    std::string mode = "f1", context = "recipe";
    read(*f, "mode", mode);
    read(*f, "context", context);
    if (mode == "f1") {
      c.filter_mode = metrics::FMode::kF1;
    } else if (mode == "precision") {
      c.filter_mode = metrics::FMode::kPrecision;
    } else if (mode == "recall") {
      c.filter_mode = metrics::FMode::kRecall;
    } else {
      bad("filter.mode must be f1, precision or recall");
    }
    if (context == "recipe") {
      c.filter_context = FilterContext::kRecipe;
    } else if (context == "sentence") {
      c.filter_context = FilterContext::kSentence;
    } else {
      bad("filter.context must be recipe or sentence");
    }
  }
  if (auto a = j.find("augment"); a != j.end()) {
    only_keys(*a, "augment", {"paraphrase_k", "n_per_answer"});
    read(*a, "paraphrase_k", c.paraphrase_k);
    read(*a, "n_per_answer", c.n_per_answer);
  }
  read(j, "workers", c.workers);
  if (auto o = j.find("outputs"); o != j.end()) {
    only_keys(*o, "outputs", {"dataset", "audit", "summary"});
    read_path(*o, "dataset", base_dir, c.dataset_out);
    read_path(*o, "audit", base_dir, c.audit_out);
    read_path(*o, "summary", base_dir, c.summary_out);
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PipelineError(PipelineError::Kind::kFileNotFound, "cannot open " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) bad(path.string() + " is not valid JSON");
  return config_from_json(j, path.parent_path());
}

}  // namespace procqa::pipeline
