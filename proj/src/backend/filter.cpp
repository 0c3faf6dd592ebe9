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

#include "procqa/backend/filter.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace procqa::backend {

std::vector<FilterVerdict> round_trip_filter(const std::vector<QaText>& pairs,
                                             const BackendClient& client,
                                             const FilterOptions& options) {
  std::vector<FilterVerdict> verdicts(pairs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      FilterVerdict& v = verdicts[i];
      try {
        v.predicted = client.answer_question(pairs[i].context, pairs[i].question);
        v.score = metrics::rouge1(pairs[i].answer, v.predicted, options.mode);
        v.kept = v.score > options.threshold;
      } catch (const BackendError& e) {
        v.skipped = e.kind();
        v.error = e.what();
      }
    }
  };
  const auto workers =
      static_cast<std::size_t>(std::clamp<int>(options.workers, 1, 64));
  if (workers == 1 || pairs.size() < 2) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, pairs.size()); ++w) pool.emplace_back(work);
  }
  return verdicts;
}

}  // namespace procqa::backend
