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

#ifndef PROCQA_PIPELINE_RECIPE_HPP_
#define PROCQA_PIPELINE_RECIPE_HPP_

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "procqa/amr/graph.hpp"

namespace procqa::pipeline {

class PipelineError : public std::runtime_error {
 public:
  enum class Kind {
    kFileNotFound,
    kSchemaViolation,
    kBadConfig,
    kMissingFlowGraph,
    kBackendRequiredButUnavailable,
  };
  PipelineError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct RecipeDoc {
  std::string id;
  std::string title;
  std::vector<std::string> ingredients;
  // One instruction sentence per entry.
  std::vector<std::string> steps;

  // Steps joined by single spaces.
  std::string text() const;
};

// A rejected input entry. `line` is the JSONL line, or the 1-based position
// in a JSON array.
struct Diagnostic {
  std::size_t line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<RecipeDoc> docs;
  std::vector<Diagnostic> diagnostics;
};

// Throws PipelineError(kSchemaViolation) when the entry is malformed.
RecipeDoc recipe_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RecipeDoc& doc);

// Reads a JSON array of recipes, a {"recipes": [...]} object, or JSONL (one
// recipe per line; chosen for ".jsonl" files). Bad entries and repeated ids
// become diagnostics. Throws kFileNotFound, or kSchemaViolation when no entry
// is valid.
IngestResult ingest(const std::filesystem::path& path);

// Sentence graphs keyed by recipe id, then sentence index.
using SidecarAmrs = std::map<std::string, std::map<int, amr::Graph>>;

// Reads PENMAN blocks whose `# ::id` is "<recipe id>.<sentence index>". A
// directory is read file by file (*.penman, sorted by name). Blocks without
// a well-formed id are reported in `diagnostics` and skipped.
SidecarAmrs load_sidecar_amrs(const std::filesystem::path& path,
                              std::vector<std::string>* diagnostics = nullptr);

}  // namespace procqa::pipeline

#endif  // PROCQA_PIPELINE_RECIPE_HPP_
