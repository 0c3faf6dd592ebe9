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

#include "procqa/backend/realizer.hpp"

#include <cctype>
#include <map>

#include "procqa/amr/edit.hpp"
#include "procqa/amr/penman.hpp"
#include "procqa/amr/phrase.hpp"

namespace procqa::backend {
namespace {

using qgen::Category;

const amr::SerializeOptions kWire{.indent = false};

const std::map<std::string, std::string, std::less<>> kWhWords = {
    {":location", "Where"},       {":duration", "How long"},  {":time", "When"},
    {":extent", "Until when"},    {":instrument", "With what"}, {":accompanier", "With what"},
    {":purpose", "Why"},          {":manner", "How"},         {":destination", "Where"},
    {":frequency", "How often"},  {":source", "From where"},
};

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// The edge pointing at the amr-unknown node, if any.
const amr::Edge* unknown_edge(const amr::Graph& g) {
  for (const amr::Edge& e : g.edges()) {
    if (e.targets_var() && g.concept_of(e.var()) == amr::kUnknownConcept) return &e;
  }
  return nullptr;
}

std::string subject_of(const amr::Graph& g) {
  if (auto i = g.find_edge(g.root(), ":ARG0")) {
    const amr::Edge& e = g.edges()[*i];
    if (e.targets_var()) {
      const std::string& c = g.concept_of(e.var());
      if (c == "i") return "I";
      if (c == "we" || c == "you") return c;
    }
  }
  return "you";
}

std::string body_of(const amr::Graph& g) {
  return amr::linearize(amr::drop_roles(g, {":ARG0", ":mode", ":polarity"}));
}

std::string wh_word(const amr::Graph& g, const amr::Edge& e) {
  if (auto it = kWhWords.find(e.role); it != kWhWords.end()) return it->second;
  if (e.role == ":quant") {
    return g.concept_of(e.source) == "temporal-quantity" ? "How long" : "How much";
  }
  return "What";
}

std::string fill_surface(const qgen::TemplateInfo& info) {
  std::string out = info.surface;
  for (std::size_t k = 0; k < info.slot_texts.size(); ++k) {
    const std::string slot = "{" + std::to_string(k + 1) + "}";
    for (auto pos = out.find(slot); pos != std::string::npos; pos = out.find(slot, pos)) {
      out.replace(pos, slot.size(), info.slot_texts[k]);
      pos += info.slot_texts[k].size();
    }
  }
  return out;
}

std::string join_words(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + " " + b;
}

}  // namespace

std::string fallback_question(const qgen::QaCandidate& c) {
  const amr::Graph& g = c.question_amr;
  if (qgen::is_temporal(c.category)) {
    if (!c.template_info) {
      throw RealizeError(c.label() + ": temporal candidate without template surface");
    }
    return fill_surface(*c.template_info);
  }
  const amr::Edge* e = unknown_edge(g);
  if (e == nullptr) throw RealizeError(c.label() + ": question has no amr-unknown");
  const std::string subject = subject_of(g);
  const std::string body = body_of(g);
  switch (c.category) {
    case Category::kPolarityYes:
    case Category::kPolarityNo:
      return "Do " + join_words(subject, body) + "?";
    case Category::kInstructionHow:
      return "How do " + join_words(subject, body) + "?";
    case Category::kInstructionWhatWith:
    case Category::kRoleSpecific:
      return wh_word(g, *e) + " do " + join_words(subject, body) + "?";
    default:
      break;
  }
  throw RealizeError("no offline realization for " + c.label());
}

std::string fallback_answer(const qgen::QaCandidate& c) {
  if (c.answer_text) return *c.answer_text;
  if (c.answer_hint) return *c.answer_hint;
  if (c.answer_amr) return amr::linearize(*c.answer_amr);
  throw RealizeError(c.label() + ": candidate has no answer");
}

void realize_offline(qgen::QaCandidate& c) {
  std::string question = fallback_question(c);
  c.answer_text = fallback_answer(c);
  c.question_text = capitalize(std::move(question));
  c.fallback_realized = true;
}

void realize_with(qgen::QaCandidate& c, const BackendClient& client) {
  std::string question = client.to_text(amr::serialize_penman(c.question_amr, kWire));
  if (!c.answer_text) {
    c.answer_text = c.answer_amr ? client.to_text(amr::serialize_penman(*c.answer_amr, kWire))
                                 : fallback_answer(c);
  }
  c.question_text = std::move(question);
  c.fallback_realized = false;
}

}  // namespace procqa::backend
