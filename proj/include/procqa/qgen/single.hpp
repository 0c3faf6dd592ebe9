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

#ifndef PROCQA_QGEN_SINGLE_HPP_
#define PROCQA_QGEN_SINGLE_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "procqa/amr/graph.hpp"
#include "procqa/qgen/candidate.hpp"
#include "procqa/qgen/lexicon.hpp"

// Question generators for a single instruction graph. None of them modify the
// input graph; every question they return holds exactly one amr-unknown.
namespace procqa::qgen {

class QgenError : public std::runtime_error {
 public:
  enum class Kind {
    kMissingArg1,
    kMissingArg2,
    kUnsupportedRole,
    kNoObjectArgs,
    kNoReplaceableRole,
  };
  QgenError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(QgenError::Kind kind);

// One recipe sentence and its graph. `text` may be empty; it is used as the
// answer of instruction-level questions and to recover the preposition in
// front of :ARG2.
struct SentenceInput {
  std::string recipe_id;
  int index = 0;
  std::string text;
  amr::Graph amr;
};

// Root roles answered by gen_role_questions, in the order they are listed.
const std::vector<std::string>& supported_roles();
// Roles handled by gen_direct_role_question.
bool is_direct_role(std::string_view role);

// Word in `text` right before the first mention of `head`, if it is one of a
// small set of prepositions. `head` is matched on its singular form.
std::optional<std::string> governing_preposition(std::string_view text,
                                                 std::string_view head);

// Role-specific questions for every supported root role, in document order,
// followed by the quantity questions.
std::vector<QaCandidate> gen_role_questions(const SentenceInput& input,
                                            const RuleLexicons& lex);

// Whole-:ARG1 question, per-entity questions for compound objects and the
// :mod/:quant attribute questions. Throws QgenError(kMissingArg1).
std::vector<QaCandidate> gen_arg1_questions(const SentenceInput& input,
                                            const RuleLexicons& lex);

// :ARG2 cascade: instrument, then destination, then swap with :ARG1.
// Throws QgenError(kMissingArg2).
std::vector<QaCandidate> gen_arg2_questions(const SentenceInput& input,
                                            const RuleLexicons& lex);

// Question with amr-unknown placed directly on :ARG2. Not part of the
// generated set; useful for inspecting the raw replacement.
QaCandidate direct_arg2_question(const SentenceInput& input);

std::optional<QaCandidate> gen_time_question(const SentenceInput& input);

std::vector<QaCandidate> gen_quantity_questions(const SentenceInput& input);

// Question on the `occurrence`-th root edge carrying `role`. Returns nullopt
// when the role is absent; throws QgenError(kUnsupportedRole) for roles
// outside the direct set.
std::optional<QaCandidate> gen_direct_role_question(const SentenceInput& input,
                                                    std::string_view role,
                                                    std::size_t occurrence = 0);

QaCandidate gen_how_question(const SentenceInput& input);

// Throws QgenError(kNoObjectArgs) if the root has no object arguments.
std::vector<QaCandidate> gen_what_with_questions(const SentenceInput& input);

struct PolarityPair {
  QaCandidate yes;
  std::optional<QaCandidate> no;
  // Set when `no` is absent.
  std::optional<QgenError::Kind> no_skipped;
};

// Yes/no questions. The subject and the replaced role are drawn from `seed`;
// donors are the graphs of other sentences.
PolarityPair gen_polarity_questions(const SentenceInput& input,
                                    const std::vector<amr::Graph>& donor_pool,
                                    std::uint64_t seed);

// All single-instruction candidates for one sentence: role-specific, how,
// what-with, yes and no. Generator errors are reported through `skipped`
// rather than thrown.
struct SingleResult {
  std::vector<QaCandidate> candidates;
  std::vector<std::string> skipped;
};
SingleResult gen_single_questions(const SentenceInput& input,
                                  const std::vector<amr::Graph>& donor_pool,
                                  const RuleLexicons& lex, std::uint64_t seed);

}  // namespace procqa::qgen

#endif  // PROCQA_QGEN_SINGLE_HPP_
