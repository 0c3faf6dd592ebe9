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

#include "procqa/pipeline/record.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <ostream>
#include <set>

#include "procqa/amr/edit.hpp"
#include "procqa/amr/penman.hpp"

namespace procqa::pipeline {
namespace {

// ordered_json keeps the emitted key order fixed and readable.
using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

const amr::SerializeOptions kOneLine{.indent = false};

[[noreturn]] void schema(const std::string& what) {
  throw PipelineError(PipelineError::Kind::kSchemaViolation, what);
}

template <typename J>
ojson optional_value(const std::optional<J>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

const std::set<std::string> kMethods = {"generated", "paraphrase", "answer_based"};

}  // namespace

DatasetRecord record_from_candidate(const qgen::QaCandidate& c, std::string id) {
  qgen::check_realized(c);
  DatasetRecord r;
  r.id = std::move(id);
  r.recipe_id = c.provenance.recipe_id;
  r.question = *c.question_text;
  r.answer = *c.answer_text;
  r.category = c.category;
  r.role = c.role;
  r.question_amr = amr::serialize_penman(c.question_amr, kOneLine);
  if (c.answer_amr) r.answer_amr = amr::serialize_penman(*c.answer_amr, kOneLine);
  r.sentences = c.provenance.sentences;
  r.answer_sentence = c.provenance.answer_sentence;
  if (c.template_info) r.template_id = c.template_info->id;
  r.realizer = c.fallback_realized ? "fallback" : "neural";
  return r;
}

namespace {

ojson ordered(const DatasetRecord& r) {
  ojson j;
  j["id"] = r.id;
  j["recipe_id"] = r.recipe_id;
  j["category"] = std::string(qgen::to_string(r.category));
  j["role"] = r.role;
  j["question"] = r.question;
  j["answer"] = r.answer;
  j["question_amr"] = r.question_amr;
  j["answer_amr"] = optional_value(r.answer_amr);
  j["sentences"] = r.sentences;
  j["answer_sentence"] = optional_value(r.answer_sentence);
  j["template_id"] = optional_value(r.template_id);
  j["realizer"] = r.realizer;
  j["method"] = r.method;
  j["source_id"] = optional_value(r.source_id);
  j["filter_score"] = optional_value(r.filter_score);
  j["backend"] = optional_value(r.backend);
  return j;
}

}  // namespace

json to_json(const DatasetRecord& r) { return json::parse(ordered(r).dump()); }

namespace {

std::string req_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) schema(std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

template <typename T>
std::optional<T> opt(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    schema(std::string("'") + key + "' has the wrong type");
  }
}

}  // namespace

DatasetRecord record_from_json(const json& j) {
  if (!j.is_object()) schema("record must be a JSON object");
  DatasetRecord r;
  r.id = req_string(j, "id");
  r.recipe_id = req_string(j, "recipe_id");
  const std::string category = req_string(j, "category");
  auto cat = qgen::parse_category(category);
  if (!cat) schema("unknown category '" + category + "'");
  r.category = *cat;
  r.role = req_string(j, "role");
  r.question = req_string(j, "question");
  r.answer = req_string(j, "answer");
  r.question_amr = req_string(j, "question_amr");
  r.answer_amr = opt<std::string>(j, "answer_amr");
  auto sentences = j.find("sentences");
  if (sentences == j.end() || !sentences->is_array()) schema("'sentences' must be a list");
  for (const auto& s : *sentences) {
    if (!s.is_number_integer()) schema("'sentences' must hold integers");
    r.sentences.push_back(s.get<int>());
  }
  r.answer_sentence = opt<int>(j, "answer_sentence");
  r.template_id = opt<std::string>(j, "template_id");
  r.realizer = req_string(j, "realizer");
  r.method = req_string(j, "method");
  r.source_id = opt<std::string>(j, "source_id");
  r.filter_score = opt<double>(j, "filter_score");
  r.backend = opt<std::string>(j, "backend");
  check_record(r);
  return r;
}

void check_record(const DatasetRecord& r) {
  const std::string where = "record '" + r.id + "': ";
  if (r.id.empty()) schema("record without id");
  if (r.recipe_id.empty()) schema(where + "empty recipe_id");
  if (r.question.empty()) schema(where + "empty question");
  if (r.answer.empty()) schema(where + "empty answer");
  if (r.realizer != "neural" && r.realizer != "fallback") {
    schema(where + "realizer must be neural or fallback");
  }
  if (!kMethods.count(r.method)) schema(where + "unknown method '" + r.method + "'");
  if (r.method != "generated" && !r.source_id) schema(where + "augmented record without source_id");
  // Augmented questions come from the backend as text only.
  if (r.method != "generated") {
    if (!r.question_amr.empty()) schema(where + "augmented record with a question_amr");
    return;
  }
  amr::Graph q;
  try {
    q = amr::parse_penman(r.question_amr);
  } catch (const std::exception& e) {
    schema(where + "question_amr: " + e.what());
  }
  if (amr::count_unknowns(q) != 1) schema(where + "question_amr must hold exactly one amr-unknown");
}

void write_jsonl(std::ostream& out, const std::vector<DatasetRecord>& records) {
  for (const auto& r : records) out << ordered(r).dump() << '\n';
}

std::vector<DatasetRecord> read_jsonl(const std::filesystem::path& path,
                                      std::vector<Diagnostic>* diagnostics) {
  std::ifstream in(path);
  if (!in) throw PipelineError(PipelineError::Kind::kFileNotFound, "cannot open " + path.string());
  std::vector<DatasetRecord> out;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded()) schema("invalid JSON");
      out.push_back(record_from_json(j));
    } catch (const PipelineError& e) {
      if (diagnostics) diagnostics->push_back({line_no, e.what()});
    }
  }
  return out;
}

std::vector<Diagnostic> validate_dataset(const std::filesystem::path& path) {
  std::vector<Diagnostic> diagnostics;
  std::ifstream in(path);
  if (!in) throw PipelineError(PipelineError::Kind::kFileNotFound, "cannot open " + path.string());
  std::set<std::string> ids;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    try {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded()) schema("invalid JSON");
      DatasetRecord r = record_from_json(j);
      if (!ids.insert(r.id).second) schema("duplicate id '" + r.id + "'");
    } catch (const PipelineError& e) {
      diagnostics.push_back({line_no, e.what()});
    }
  }
  return diagnostics;
}

}  // namespace procqa::pipeline
