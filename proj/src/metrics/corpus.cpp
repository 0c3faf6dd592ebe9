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

#include "procqa/metrics/corpus.hpp"

#include <nlohmann/json.hpp>

#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace procqa::metrics {
namespace {

using json = nlohmann::json;

// Counts n-grams per n in one pass over the tokenized corpus.
struct NgramCounts {
  std::array<std::set<std::vector<std::string>>, kMaxN> distinct;
  std::array<std::size_t, kMaxN> total{};
  std::size_t tokens = 0;

  explicit NgramCounts(const std::vector<std::string>& questions, int max_n = kMaxN) {
    for (const auto& q : questions) {
      const auto toks = tokenize(q);
      tokens += toks.size();
      for (int n = 1; n <= max_n; ++n) {
        const auto un = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i + un <= toks.size(); ++i) {
          distinct[un - 1].emplace(toks.begin() + static_cast<std::ptrdiff_t>(i),
                                   toks.begin() + static_cast<std::ptrdiff_t>(i + un));
          ++total[un - 1];
        }
      }
    }
  }

  double ratio(int n) const {
    const auto k = static_cast<std::size_t>(n - 1);
    return total[k] == 0 ? 0.0
                         : static_cast<double>(distinct[k].size()) / static_cast<double>(total[k]);
  }
};

double mean_of_dists(const NgramCounts& c) {
  double sum = 0.0;
  for (int n = 1; n <= kMaxN; ++n) sum += c.ratio(n);
  return sum / kMaxN;
}

}  // namespace

double dist_n(const std::vector<std::string>& questions, int n) {
  if (n < 1 || n > kMaxN) {
    throw MetricsError(MetricsError::Kind::kBadArgument,
                       "dist_n needs 1 <= n <= 5, got " + std::to_string(n));
  }
  return NgramCounts(questions, n).ratio(n);
}

double ngram_diversity(const std::vector<std::string>& questions) {
  return mean_of_dists(NgramCounts(questions));
}

DiversityReport diversity_report(const std::vector<std::string>& questions) {
  NgramCounts counts(questions);
  DiversityReport r;
  for (int n = 1; n <= kMaxN; ++n) r.dist[static_cast<std::size_t>(n - 1)] = counts.ratio(n);
  r.ngram_diversity = mean_of_dists(counts);
  r.question_count = questions.size();
  r.token_count = counts.tokens;
  return r;
}

CoverageReport coverage(const std::vector<Question>& reference,
                        const std::vector<Question>& generated, const PairScorer& scorer) {
  if (reference.empty()) {
    throw MetricsError(MetricsError::Kind::kEmptyReference, "reference question set is empty");
  }
  if (generated.empty()) {
    throw MetricsError(MetricsError::Kind::kEmptyGenerated, "generated question set is empty");
  }
  CoverageReport report;
  report.scorer = scorer.name();
  report.range = scorer.range();
  report.n_reference = reference.size();
  report.n_generated = generated.size();
  double sum = 0.0;
  for (const Question& ref : reference) {
    ReferenceScore best{ref.id, generated.front().id, scorer.score(ref.text, generated.front().text)};
    for (std::size_t j = 1; j < generated.size(); ++j) {
      double s = scorer.score(ref.text, generated[j].text);
      if (s > best.score) best = {ref.id, generated[j].id, s};
    }
    sum += best.score;
    report.per_reference.push_back(std::move(best));
  }
  report.coverage = sum / static_cast<double>(reference.size());
  return report;
}

json to_json(const DiversityReport& r) {
  json dist = json::object();
  for (int n = 1; n <= kMaxN; ++n) dist[std::to_string(n)] = r.dist[static_cast<std::size_t>(n - 1)];
  return {{"dist", dist},
          {"ngram_diversity", r.ngram_diversity},
          {"question_count", r.question_count},
          {"token_count", r.token_count}};
}

json to_json(const CoverageReport& r) {
  json rows = json::array();
  for (const auto& s : r.per_reference) {
    rows.push_back({{"reference_id", s.reference_id},
                    {"best_generated_id", s.best_generated_id},
                    {"score", s.score}});
  }
  return {{"coverage", r.coverage},
          {"per_reference", rows},
          {"scorer", r.scorer},
          {"range", {r.range.first, r.range.second}},
          {"n_reference", r.n_reference},
          {"n_generated", r.n_generated}};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_coverage_csv(std::ostream& out, const CoverageReport& report) {
  out << "reference_id,best_generated_id,score\n";
  for (const auto& s : report.per_reference) {
    std::ostringstream score;
    score << std::setprecision(17) << s.score;
    out << csv_field(s.reference_id) << ',' << csv_field(s.best_generated_id) << ','
        << score.str() << '\n';
  }
}

}  // namespace procqa::metrics
