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

#ifndef PROCQA_METRICS_SCORERS_HPP_
#define PROCQA_METRICS_SCORERS_HPP_

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace procqa::metrics {

class MetricsError : public std::runtime_error {
 public:
  enum class Kind { kEmptyReference, kEmptyGenerated, kUnknownScorer, kBadArgument };
  MetricsError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Lowercases, splits on whitespace and emits each ASCII punctuation
// character as its own token.
std::vector<std::string> tokenize(std::string_view text);

// Tokens the overlap scorers compare: tokenize() minus punctuation-only
// tokens.
std::vector<std::string> content_tokens(std::string_view text);

enum class FMode { kF1, kPrecision, kRecall };

// `reference` first, `candidate` second: precision is measured against the
// candidate length. Any empty side scores 0.
double rouge1(std::string_view reference, std::string_view candidate, FMode mode = FMode::kF1);
double rouge_l(std::string_view reference, std::string_view candidate, FMode mode = FMode::kF1);
// Bag-of-tokens F1 with clipped counts; equal to rouge1 in F1 mode.
double token_f1(std::string_view reference, std::string_view candidate);

// Pairwise similarity used by coverage.
class PairScorer {
 public:
  virtual ~PairScorer() = default;
  virtual double score(std::string_view a, std::string_view b) const = 0;
  virtual std::string name() const = 0;
  // Closed interval every score falls in.
  virtual std::pair<double, double> range() const { return {0.0, 1.0}; }
  virtual bool symmetric() const { return true; }
};

// 1 when the token sequences are equal, else 0.
class ExactMatchScorer : public PairScorer {
 public:
  double score(std::string_view a, std::string_view b) const override;
  std::string name() const override { return "exact"; }
};

class Rouge1Scorer : public PairScorer {
 public:
  double score(std::string_view a, std::string_view b) const override { return rouge1(a, b); }
  std::string name() const override { return "rouge1"; }
};

class RougeLScorer : public PairScorer {
 public:
  double score(std::string_view a, std::string_view b) const override { return rouge_l(a, b); }
  std::string name() const override { return "rougeL"; }
};

class TokenF1Scorer : public PairScorer {
 public:
  double score(std::string_view a, std::string_view b) const override { return token_f1(a, b); }
  std::string name() const override { return "token_f1"; }
};

// "exact", "rouge1", "rougeL" or "token_f1". Throws MetricsError(kUnknownScorer).
std::unique_ptr<PairScorer> make_scorer(std::string_view name);
const std::vector<std::string>& scorer_names();

}  // namespace procqa::metrics

#endif  // PROCQA_METRICS_SCORERS_HPP_
