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

#include "procqa/metrics/scorers.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace procqa::metrics {
namespace {

bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::size_t clipped_overlap(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : a) ++counts[t];
  std::size_t overlap = 0;
  for (const auto& t : b) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return overlap;
}

double f_measure(std::size_t hits, std::size_t ref_len, std::size_t cand_len, FMode mode) {
  if (ref_len == 0 || cand_len == 0) return 0.0;
  const double p = static_cast<double>(hits) / static_cast<double>(cand_len);
  const double r = static_cast<double>(hits) / static_cast<double>(ref_len);
  switch (mode) {
    case FMode::kPrecision:
      return p;
    case FMode::kRecall:
      return r;
    case FMode::kF1:
      break;
  }
  return hits == 0 ? 0.0 : 2.0 * p * r / (p + r);
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (const auto& x : a) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = x == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (is_punct(c)) {
      flush();
      out.emplace_back(1, c);
    } else {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  flush();
  return out;
}

std::vector<std::string> content_tokens(std::string_view text) {
  std::vector<std::string> out = tokenize(text);
  std::erase_if(out, [](const std::string& t) { return t.size() == 1 && is_punct(t[0]); });
  return out;
}

double rouge1(std::string_view reference, std::string_view candidate, FMode mode) {
  auto ref = content_tokens(reference);
  auto cand = content_tokens(candidate);
  return f_measure(clipped_overlap(ref, cand), ref.size(), cand.size(), mode);
}

double rouge_l(std::string_view reference, std::string_view candidate, FMode mode) {
  auto ref = content_tokens(reference);
  auto cand = content_tokens(candidate);
  return f_measure(lcs_length(ref, cand), ref.size(), cand.size(), mode);
}

double token_f1(std::string_view reference, std::string_view candidate) {
  auto ref = content_tokens(reference);
  auto cand = content_tokens(candidate);
  return f_measure(clipped_overlap(ref, cand), ref.size(), cand.size(), FMode::kF1);
}

double ExactMatchScorer::score(std::string_view a, std::string_view b) const {
  return tokenize(a) == tokenize(b) ? 1.0 : 0.0;
}

const std::vector<std::string>& scorer_names() {
  static const std::vector<std::string> names = {"exact", "rouge1", "rougeL", "token_f1"};
  return names;
}

std::unique_ptr<PairScorer> make_scorer(std::string_view name) {
  if (name == "exact") return std::make_unique<ExactMatchScorer>();
  if (name == "rouge1") return std::make_unique<Rouge1Scorer>();
  if (name == "rougeL") return std::make_unique<RougeLScorer>();
  if (name == "token_f1") return std::make_unique<TokenF1Scorer>();
  throw MetricsError(MetricsError::Kind::kUnknownScorer, "unknown scorer '" + std::string(name) + "'");
}

}  // namespace procqa::metrics
