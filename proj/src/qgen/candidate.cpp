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

#include "procqa/qgen/candidate.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <utility>

#include "procqa/amr/edit.hpp"
#include "procqa/amr/penman.hpp"

namespace procqa::qgen {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<Category, std::string_view>, 9> kNames = {{
    {Category::kRoleSpecific, "role_specific"},
    {Category::kInstructionHow, "instruction_how"},
    {Category::kInstructionWhatWith, "instruction_what_with"},
    {Category::kPolarityYes, "polarity_yes"},
    {Category::kPolarityNo, "polarity_no"},
    {Category::kTemporalMixture, "temporal_mixture"},
    {Category::kTemporalNext, "temporal_next"},
    {Category::kTemporalPrev, "temporal_prev"},
    {Category::kTemporalOrder, "temporal_order"},
}};

std::string compact(const amr::Graph& g) {
  return amr::serialize_penman(g, {.indent = false});
}

template <typename T>
std::optional<T> optional_field(const json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

}  // namespace

std::string_view to_string(Category category) {
  for (const auto& [c, name] : kNames) {
    if (c == category) return name;
  }
  return "unknown";
}

std::optional<Category> parse_category(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

bool is_temporal(Category category) {
  switch (category) {
    case Category::kTemporalMixture:
    case Category::kTemporalNext:
    case Category::kTemporalPrev:
    case Category::kTemporalOrder:
      return true;
    default:
      return false;
  }
}

std::string QaCandidate::label() const {
  std::string out(to_string(category));
  if (category == Category::kRoleSpecific) out += "(" + role + ")";
  return out;
}

void check_candidate(const QaCandidate& candidate) {
  if (candidate.answer_amr.has_value() == candidate.answer_text.has_value()) {
    throw CandidateError(candidate.label() +
                         ": exactly one of answer_amr and answer_text must be set");
  }
  std::size_t unknowns = amr::count_unknowns(candidate.question_amr);
  if (unknowns != 1) {
    throw CandidateError(candidate.label() + ": question has " +
                         std::to_string(unknowns) + " amr-unknown nodes");
  }
  candidate.question_amr.validate();
  if (candidate.answer_amr) candidate.answer_amr->validate();
}

void check_realized(const QaCandidate& candidate) {
  if (!candidate.question_text || !candidate.answer_text) {
    throw CandidateError(candidate.label() + ": not realized");
  }
  if (amr::count_unknowns(candidate.question_amr) != 1) {
    throw CandidateError(candidate.label() + ": question lost its amr-unknown");
  }
}

json to_json(const QaCandidate& c) {
  json out = json::object();
  out["category"] = std::string(to_string(c.category));
  out["role"] = c.role;
  out["origin_role"] = c.origin_role;
  out["question_amr"] = compact(c.question_amr);
  out["answer_amr"] = c.answer_amr ? json(compact(*c.answer_amr)) : json(nullptr);
  out["answer_text"] = c.answer_text ? json(*c.answer_text) : json(nullptr);
  if (c.answer_hint) out["answer_hint"] = *c.answer_hint;
  out["question_text"] = c.question_text ? json(*c.question_text) : json(nullptr);
  json prov = {{"recipe_id", c.provenance.recipe_id},
               {"sentences", c.provenance.sentences}};
  prov["answer_sentence"] = c.provenance.answer_sentence
                                ? json(*c.provenance.answer_sentence)
                                : json(nullptr);
  out["provenance"] = std::move(prov);
  if (c.template_info) {
    out["template"] = {{"id", c.template_info->id},
                       {"surface", c.template_info->surface},
                       {"slot_texts", c.template_info->slot_texts}};
  }
  out["fallback_realized"] = c.fallback_realized;
  return out;
}

QaCandidate candidate_from_json(const json& record) {
  try {
    QaCandidate c;
    auto category = parse_category(record.at("category").get<std::string>());
    if (!category) throw CandidateError("unknown category");
    c.category = *category;
    c.role = record.value("role", "");
    c.origin_role = record.value("origin_role", "");
    c.question_amr = amr::parse_penman(record.at("question_amr").get<std::string>());
    if (auto a = optional_field<std::string>(record, "answer_amr")) {
      c.answer_amr = amr::parse_penman(*a);
    }
    c.answer_text = optional_field<std::string>(record, "answer_text");
    c.answer_hint = optional_field<std::string>(record, "answer_hint");
    c.question_text = optional_field<std::string>(record, "question_text");
    const json& prov = record.at("provenance");
    c.provenance.recipe_id = prov.at("recipe_id").get<std::string>();
    c.provenance.sentences = prov.at("sentences").get<std::vector<int>>();
    c.provenance.answer_sentence = optional_field<int>(prov, "answer_sentence");
    if (auto it = record.find("template"); it != record.end() && !it->is_null()) {
      c.template_info = TemplateInfo{it->at("id").get<std::string>(),
                                     it->at("surface").get<std::string>(),
                                     it->at("slot_texts").get<std::vector<std::string>>()};
    }
    c.fallback_realized = record.value("fallback_realized", false);
    return c;
  } catch (const json::exception& e) {
    throw CandidateError(std::string("malformed candidate record: ") + e.what());
  } catch (const amr::PenmanError& e) {
    throw CandidateError(std::string("bad PENMAN in candidate record: ") + e.what());
  }
}

}  // namespace procqa::qgen
