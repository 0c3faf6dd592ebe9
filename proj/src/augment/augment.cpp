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

#include "procqa/augment/augment.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <map>
#include <set>

namespace procqa::augment {

std::string_view to_string(Method method) {
  return method == Method::kParaphrase ? "paraphrase" : "answer_based";
}

nlohmann::json to_json(const AugmentationRecord& r) {
  nlohmann::json j = {{"source_id", r.source_id},
                      {"method", std::string(to_string(r.method))},
                      {"question", r.question},
                      {"verdict", r.verdict},
                      {"score", r.score ? nlohmann::json(*r.score) : nlohmann::json(nullptr)},
                      {"backend", r.backend}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string normalize_question(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u)) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += static_cast<char>(std::tolower(u));
  }
  while (!out.empty() && (std::ispunct(static_cast<unsigned char>(out.back())) || out.back() == ' ')) {
    out.pop_back();
  }
  return out;
}

AugmentResult paraphrase_augment(const std::vector<SourceQa>& sources,
                                 const backend::BackendClient& client,
                                 const ParaphraseOptions& options) {
  AugmentResult result;
  const std::string backend = client.identity();
  for (const SourceQa& src : sources) {
    AugmentationRecord base{src.id, Method::kParaphrase, "", "", std::nullopt, backend, ""};
    std::vector<std::string> texts;
    try {
      texts = client.paraphrase(src.question, options.k);
    } catch (const backend::BackendError& e) {
      base.question = src.question;
      base.verdict = "skipped";
      base.error = e.what();
      result.audit.push_back(std::move(base));
      continue;
    }
    std::set<std::string> seen = {normalize_question(src.question)};
    int next = 0;
    for (std::string& text : texts) {
      AugmentationRecord rec = base;
      rec.question = text;
      if (!seen.insert(normalize_question(text)).second) {
        rec.verdict = "duplicate";
      } else {
        rec.verdict = "kept";
        result.added.push_back({src.id + "#p" + std::to_string(next++), src.id,
                                Method::kParaphrase, std::move(text), src.answer, std::nullopt});
      }
      result.audit.push_back(std::move(rec));
    }
  }
  return result;
}

AugmentResult answer_based_augment(const std::vector<SourceQa>& sources,
                                   const backend::BackendClient& client,
                                   const AnswerBasedOptions& options) {
  AugmentResult result;
  const std::string backend = client.identity();

  // Distinct answers per context; the first source carrying one owns it.
  struct Candidate {
    const SourceQa* source;
    std::string question;
  };
  std::vector<Candidate> candidates;
  std::set<std::pair<std::string, std::string>> answered;
  std::set<std::pair<std::string, std::string>> asked;
  for (const SourceQa& src : sources) {
    asked.emplace(src.context, normalize_question(src.question));
  }
  for (const SourceQa& src : sources) {
    if (!answered.emplace(src.context, normalize_question(src.answer)).second) continue;
    std::vector<std::string> questions;
    try {
      questions = client.questions_for_answer(src.context, src.answer, options.n_per_answer);
    } catch (const backend::BackendError& e) {
      result.audit.push_back(
          {src.id, Method::kAnswerBased, src.answer, "skipped", std::nullopt, backend, e.what()});
      continue;
    }
    for (std::string& q : questions) {
      if (!asked.emplace(src.context, normalize_question(q)).second) {
        result.audit.push_back(
            {src.id, Method::kAnswerBased, q, "duplicate", std::nullopt, backend, ""});
        continue;
      }
      candidates.push_back({&src, std::move(q)});
    }
  }

  std::vector<backend::QaText> pairs;
  for (const Candidate& c : candidates) {
    pairs.push_back({c.source->context, c.question, c.source->answer});
  }
  const auto verdicts = backend::round_trip_filter(pairs, client, options.filter);
  std::map<std::string, int> next;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    const backend::FilterVerdict& v = verdicts[i];
    AugmentationRecord rec{c.source->id, Method::kAnswerBased, c.question, "", std::nullopt,
                           backend, ""};
    if (v.skipped) {
      rec.verdict = "skipped";
      rec.error = v.error;
    } else {
      rec.score = v.score;
      rec.verdict = v.kept ? "kept" : "filtered";
    }
    if (v.kept) {
      result.added.push_back({c.source->id + "#a" + std::to_string(next[c.source->id]++),
                              c.source->id, Method::kAnswerBased, c.question, c.source->answer,
                              v.score});
    }
    result.audit.push_back(std::move(rec));
  }
  return result;
}

}  // namespace procqa::augment
