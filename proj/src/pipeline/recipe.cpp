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

#include "procqa/pipeline/recipe.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "procqa/amr/penman.hpp"

namespace procqa::pipeline {
namespace {

using json = nlohmann::json;

[[noreturn]] void schema(const std::string& what) {
  throw PipelineError(PipelineError::Kind::kSchemaViolation, what);
}

std::vector<std::string> string_list(const json& j, const char* key, bool required) {
  auto it = j.find(key);
  if (it == j.end()) {
    if (required) schema(std::string("missing '") + key + "'");
    return {};
  }
  if (!it->is_array()) schema(std::string("'") + key + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) schema(std::string("'") + key + "' must be a list of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw PipelineError(PipelineError::Kind::kFileNotFound, "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string RecipeDoc::text() const {
  std::string out;
  for (const auto& s : steps) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

RecipeDoc recipe_from_json(const json& j) {
  if (!j.is_object()) schema("recipe must be a JSON object");
  RecipeDoc doc;
  auto id = j.find("id");
  if (id == j.end() || !id->is_string() || id->get<std::string>().empty()) {
    schema("'id' must be a non-empty string");
  }
  doc.id = id->get<std::string>();
  if (doc.id.find_first_of(" \t\n/.") != std::string::npos) {
    schema("recipe id '" + doc.id + "' must not contain whitespace, '/' or '.'");
  }
  if (auto t = j.find("title"); t != j.end()) {
    if (!t->is_string()) schema("'title' must be a string");
    doc.title = t->get<std::string>();
  }
  doc.ingredients = string_list(j, "ingredients", false);
  doc.steps = string_list(j, "steps", true);
  if (doc.steps.empty()) schema("recipe '" + doc.id + "' has no steps");
  for (const auto& s : doc.steps) {
    if (blank(s)) schema("recipe '" + doc.id + "' has an empty step");
  }
  return doc;
}

json to_json(const RecipeDoc& doc) {
  return {{"id", doc.id}, {"title", doc.title}, {"ingredients", doc.ingredients},
          {"steps", doc.steps}};
}

IngestResult ingest(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  IngestResult result;
  std::set<std::string> ids;
  auto accept = [&](std::size_t line, const json& j) {
    try {
      RecipeDoc doc = recipe_from_json(j);
      if (!ids.insert(doc.id).second) schema("duplicate recipe id '" + doc.id + "'");
      result.docs.push_back(std::move(doc));
    } catch (const PipelineError& e) {
      result.diagnostics.push_back({line, e.what()});
    }
  };

  if (path.extension() == ".jsonl") {
    std::istringstream in(text);
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
      ++line_no;
      if (blank(line)) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded()) {
        result.diagnostics.push_back({line_no, "invalid JSON"});
        continue;
      }
      accept(line_no, j);
    }
  } else {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) schema(path.string() + ": invalid JSON");
    if (doc.is_object() && doc.contains("recipes")) doc = doc["recipes"];
    if (!doc.is_array()) schema(path.string() + ": expected a list of recipes");
    for (std::size_t i = 0; i < doc.size(); ++i) accept(i + 1, doc[i]);
  }
  if (result.docs.empty()) {
    std::string what = path.string() + ": no valid recipes";
    if (!result.diagnostics.empty()) {
      what += " (entry " + std::to_string(result.diagnostics.front().line) + ": " +
              result.diagnostics.front().message + ")";
    }
    schema(what);
  }
  return result;
}

SidecarAmrs load_sidecar_amrs(const std::filesystem::path& path,
                              std::vector<std::string>* diagnostics) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(path)) {
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.path().extension() == ".penman") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else if (std::filesystem::exists(path)) {
    files.push_back(path);
  } else {
    throw PipelineError(PipelineError::Kind::kFileNotFound, "no sidecar AMRs at " + path.string());
  }

  SidecarAmrs out;
  auto note = [&](const std::string& msg) {
    if (diagnostics) diagnostics->push_back(msg);
  };
  for (const auto& file : files) {
    std::ifstream in(file);
    for (const auto& block : amr::read_penman_blocks(in)) {
      const std::string where = file.filename().string() + ":" + std::to_string(block.line);
      const std::string id = block.meta("id");
      const auto dot = id.rfind('.');
      int index = -1;
      if (dot != std::string::npos && dot > 0) {
        const char* first = id.data() + dot + 1;
        const char* last = id.data() + id.size();
        auto [ptr, ec] = std::from_chars(first, last, index);
        if (ec != std::errc() || ptr != last) index = -1;
      }
      if (index < 0) {
        note(where + ": id '" + id + "' is not <recipe>.<sentence>");
        continue;
      }
      try {
        auto& slot = out[id.substr(0, dot)];
        if (!slot.emplace(index, amr::parse_penman(block.text)).second) {
          note(where + ": repeated id '" + id + "'");
        }
      } catch (const std::exception& e) {
        note(where + ": " + e.what());
      }
    }
  }
  return out;
}

}  // namespace procqa::pipeline
