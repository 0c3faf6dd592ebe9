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

#ifndef PROCQA_TESTS_SUPPORT_METRICS_ORACLE_HPP_
#define PROCQA_TESTS_SUPPORT_METRICS_ORACLE_HPP_

#include <cctype>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

// Independent n-gram counting for the diversity metrics: its own tokenizer
// (pad punctuation with spaces, then stream-split) and string-keyed hash sets.
namespace procqa::testing {

inline std::vector<std::string> oracle_tokens(const std::string& text) {
  std::string padded;
  for (char c : text) {
    if (std::ispunct(static_cast<unsigned char>(c))) {
      padded += ' ';
      padded += c;
      padded += ' ';
    } else {
      padded += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  std::istringstream in(padded);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline double oracle_dist(const std::vector<std::string>& corpus, int n) {
  std::unordered_set<std::string> seen;
  long total = 0;
  for (const auto& q : corpus) {
    auto toks = oracle_tokens(q);
    for (int i = 0; i + n <= static_cast<int>(toks.size()); ++i) {
      std::string key;
      for (int k = 0; k < n; ++k) key += toks[static_cast<std::size_t>(i + k)] + '\x1f';
      seen.insert(key);
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(seen.size()) / static_cast<double>(total);
}

// Questions drawn from a small vocabulary so n-grams repeat.
inline std::vector<std::string> random_corpus(std::mt19937_64& rng) {
  static const std::vector<std::string> kWords = {
      "what", "do", "we", "add", "to", "the", "pan", "Pan", "?", "salt,", "how",
      "long", "cook", "rice", "it", "onions", "first", "or", "and", "don't"};
  std::vector<std::string> corpus;
  const std::size_t n = rng() % 12;
  for (std::size_t i = 0; i < n; ++i) {
    std::string q;
    const std::size_t len = rng() % 9;
    for (std::size_t k = 0; k < len; ++k) {
      if (k) q += rng() % 4 == 0 ? "  " : " ";
      q += kWords[rng() % kWords.size()];
    }
    corpus.push_back(q);
  }
  return corpus;
}

}  // namespace procqa::testing

#endif  // PROCQA_TESTS_SUPPORT_METRICS_ORACLE_HPP_
