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

#ifndef PROCQA_QGEN_TEMPORAL_HPP_
#define PROCQA_QGEN_TEMPORAL_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "procqa/amr/graph.hpp"
#include "procqa/flow/flowgraph.hpp"
#include "procqa/qgen/candidate.hpp"

// Temporal questions composed from a recipe flow graph and AMR templates.
namespace procqa::qgen {

// Placeholder concepts inside template graphs.
inline constexpr std::string_view kSlot1 = "slot-1";
inline constexpr std::string_view kSlot2 = "slot-2";

enum class TemplateKind { kMixture, kNext, kPrev, kOrder };

// How a slot is worded in the surface hint.
enum class SlotForm { kNone, kNoun, kGerund, kImperative };

struct QuestionTemplate {
  std::string id;
  TemplateKind kind = TemplateKind::kMixture;
  amr::Graph pattern;
  // English phrasing with {1} and {2} for the slots.
  std::string surface;
  SlotForm slot_form = SlotForm::kNone;

  // Number of slot-N nodes in `pattern`.
  std::size_t slot_count() const;
};

class TemporalError : public std::runtime_error {
 public:
  enum class Kind {
    kBadPlaceholderCount,
    kDuplicateTemplateId,
    kMalformedTemplate,
    kMissingActionAmr,
  };
  TemporalError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(TemplateKind kind);

// Reads PENMAN blocks carrying `# ::id`, `# ::category` (mixture, next, prev,
// order), `# ::surface` and optionally `# ::slot-form`. Mixture, prev and
// order templates need 1, 1 and 2 slots; next templates take 0 or 1.
// Throws TemporalError.
std::vector<QuestionTemplate> read_templates(std::istream& in);
std::vector<QuestionTemplate> load_templates(const std::filesystem::path& path);
// Throws TemporalError(kMalformedTemplate) unless the set has 12 mixture
// templates, an "after" and a context-free next template, a prev template and
// 2 order templates.
void check_default_set(const std::vector<QuestionTemplate>& templates);

// Replaces slot-1 (and slot-2) with the filler graphs. Edges on the slot
// node move to the filler root. Throws TemporalError(kBadPlaceholderCount).
amr::Graph instantiate(const QuestionTemplate& tmpl,
                       const std::vector<amr::Graph>& fillers);

// Graph of one flow-graph action, cut from its sentence graph.
struct ActionAmr {
  int act_id = 0;
  amr::Graph amr;
  // Imperative text of the action ("Chop the potatoes.").
  std::string realized;
};

// Sentence graphs keyed by sentence index.
using SentenceAmrs = std::map<int, amr::Graph>;

// One ActionAmr per act. A sentence with one action gives its whole graph.
// With several actions the top-level `and` is split on its :opN frames,
// matched by verb lemma and then by position; if that fails every action of
// the sentence gets the whole graph and a note goes to `warnings`.
// Throws TemporalError(kMissingActionAmr) when a sentence graph is absent.
std::vector<ActionAmr> extract_action_amrs(const flow::FlowGraph& graph,
                                           const SentenceAmrs& sentence_amrs,
                                           std::vector<std::string>* warnings = nullptr);

// Per named mixture and mixture template, a question whose answer is the
// ingredient list as an `and` of noun phrases. Repeated mixtures with the same
// name and ingredients are emitted once.
std::vector<QaCandidate> gen_mixture_questions(const std::string& recipe_id,
                                               const flow::FlowGraph& graph,
                                               const std::vector<QuestionTemplate>& templates);

// "after" and context-free questions per next action, "before" questions per
// previous action. Answers are the full action graphs.
std::vector<QaCandidate> gen_next_prev_questions(const std::string& recipe_id,
                                                 const flow::FlowGraph& graph,
                                                 const std::vector<QuestionTemplate>& templates,
                                                 const std::vector<ActionAmr>& actions);

// Every order template in both slot orders for each comparable pair. The
// answer is the earlier action with :ord (ordinal-entity :value 1).
std::vector<QaCandidate> gen_order_questions(const std::string& recipe_id,
                                             const flow::FlowGraph& graph,
                                             const std::vector<QuestionTemplate>& templates,
                                             const std::vector<ActionAmr>& actions);

// All of the above for one recipe.
std::vector<QaCandidate> gen_temporal_questions(const std::string& recipe_id,
                                                const flow::FlowGraph& graph,
                                                const std::vector<QuestionTemplate>& templates,
                                                const std::vector<ActionAmr>& actions);

// Surface helpers shared with the realizer.
// "Chop the potatoes." -> "chopping the potatoes"
std::string gerund_phrase(std::string_view imperative);
// "Chop the potatoes." -> "chop the potatoes"
std::string imperative_phrase(std::string_view imperative);

}  // namespace procqa::qgen

#endif  // PROCQA_QGEN_TEMPORAL_HPP_
