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

#ifndef PROCQA_BACKEND_FILTER_HPP_
#define PROCQA_BACKEND_FILTER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "procqa/backend/client.hpp"
#include "procqa/metrics/scorers.hpp"

namespace procqa::backend {

struct QaText {
  std::string context;
  std::string question;
  std::string answer;
};

struct FilterOptions {
  double threshold = 0.25;
  metrics::FMode mode = metrics::FMode::kF1;
  // Pairs checked concurrently; the client still bounds its own requests.
  int workers = 1;
};

struct FilterVerdict {
  bool kept = false;
  double score = 0.0;
  // Answer the backend gave for the question.
  std::string predicted;
  // Set when the backend call failed; the pair is then dropped.
  std::optional<BackendError::Kind> skipped;
  std::string error;
};

// Round-trip consistency check: asks the backend to answer each question from
// its context and keeps the pair iff ROUGE-1(answer, predicted) > threshold.
// One verdict per input, in input order.
std::vector<FilterVerdict> round_trip_filter(const std::vector<QaText>& pairs,
                                             const BackendClient& client,
                                             const FilterOptions& options = {});

}  // namespace procqa::backend

#endif  // PROCQA_BACKEND_FILTER_HPP_
