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

#ifndef PROCQA_METRICS_CORPUS_HPP_
#define PROCQA_METRICS_CORPUS_HPP_

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "procqa/metrics/scorers.hpp"

// Corpus-level diversity and coverage of a question set.
namespace procqa::metrics {

inline constexpr int kMaxN = 5;

// Distinct n-grams over total n-grams across the corpus; n-grams do not cross
// question boundaries. 0 when the corpus has none. Throws
// MetricsError(kBadArgument) unless 1 <= n <= kMaxN.
double dist_n(const std::vector<std::string>& questions, int n);

// (dist_1 + ... + dist_5) / 5, summed in order of n.
double ngram_diversity(const std::vector<std::string>& questions);

struct DiversityReport {
  std::array<double, kMaxN> dist{};  // dist[n - 1]
  double ngram_diversity = 0.0;
  std::size_t question_count = 0;
  std::size_t token_count = 0;
};

DiversityReport diversity_report(const std::vector<std::string>& questions);

struct Question {
  std::string id;
  std::string text;
};

struct ReferenceScore {
  std::string reference_id;
  std::string best_generated_id;  // first generated question reaching the max
  double score = 0.0;
};

struct CoverageReport {
  double coverage = 0.0;
  std::vector<ReferenceScore> per_reference;
  std::string scorer;
  std::pair<double, double> range{0.0, 1.0};
  std::size_t n_reference = 0;
  std::size_t n_generated = 0;
};

// Mean over reference questions of the best score against any generated
// question. Throws MetricsError(kEmptyReference / kEmptyGenerated).
CoverageReport coverage(const std::vector<Question>& reference,
                        const std::vector<Question>& generated, const PairScorer& scorer);

nlohmann::json to_json(const DiversityReport& report);
nlohmann::json to_json(const CoverageReport& report);
// reference_id,best_generated_id,score
void write_coverage_csv(std::ostream& out, const CoverageReport& report);

}  // namespace procqa::metrics

#endif  // PROCQA_METRICS_CORPUS_HPP_
