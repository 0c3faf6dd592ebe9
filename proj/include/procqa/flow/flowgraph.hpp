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

#ifndef PROCQA_FLOW_FLOWGRAPH_HPP_
#define PROCQA_FLOW_FLOWGRAPH_HPP_

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace procqa::flow {

// Provenance value of a raw ingredient or fresh cookware.
inline constexpr int kRaw = -1;
// Input name for a mixture carried over without being mentioned.
inline constexpr std::string_view kImplicit = "implicit";

class FlowGraphError : public std::runtime_error {
 public:
  enum class Kind { kSchemaViolation, kForwardProvenance, kCycleDetected };
  FlowGraphError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A named item and the act that produced it (kRaw if none).
struct ItemRef {
  std::string name;
  int provenance = kRaw;

  friend bool operator==(const ItemRef&, const ItemRef&) = default;
};

struct Action {
  int act_id = 0;
  int sent_index = 0;
  std::string verb;
  std::vector<ItemRef> inputs;    // file order
  std::vector<ItemRef> cookware;  // file order
  std::optional<int> next_action;

  friend bool operator==(const Action&, const Action&) = default;
};

struct Sentence {
  int index = 0;
  std::string text;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// An intermediate item consumed by `consumer_act` and produced by
// `producing_act`.
struct MixtureRef {
  std::string name;
  int producing_act = 0;
  int consumer_act = 0;
  bool named = false;
};

// True for `implicit` and pronoun references ("it", "them", ...).
bool is_unnamed_reference(std::string_view name);

// Action flow graph of one recipe. Immutable once constructed; construction
// validates every invariant and precomputes reachability.
class FlowGraph {
 public:
  // Throws FlowGraphError.
  FlowGraph(std::vector<Sentence> sentences, std::vector<Action> actions);

  const std::vector<Sentence>& sentences() const { return sentences_; }
  const std::vector<Action>& actions() const { return actions_; }
  const Action& action(int act_id) const { return actions_.at(static_cast<std::size_t>(act_id)); }
  std::size_t size() const { return actions_.size(); }
  // Text of the sentence with `sent_index`, empty if absent.
  const std::string& sentence_text(int sent_index) const;
  // Actions whose sentence is `sent_index`, ascending.
  std::vector<int> actions_in_sentence(int sent_index) const;

  // Acts whose output feeds `act_id` through an input or a cookware item,
  // ascending and unique.
  std::vector<int> provenance_parents(int act_id) const;
  // True when `from` precedes `to` along provenance edges (from != to).
  bool reaches(int from, int to) const;

  // Every input with provenance >= 0, in action then input order.
  std::vector<MixtureRef> mixtures() const;

 private:
  std::vector<Sentence> sentences_;
  std::vector<Action> actions_;
  std::vector<std::vector<bool>> reach_;
};

// Parses the JSON sentence-record list. Throws FlowGraphError. Key order of
// "input" and "cookware" is kept, so documents are ordered_json.
FlowGraph flowgraph_from_json(const nlohmann::ordered_json& document);
FlowGraph parse_flowgraph(std::string_view text);
FlowGraph load_flowgraph(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const FlowGraph& graph);

// Raw ingredients that went into the mixture, first-seen order, no repeats.
std::vector<std::string> ingredients_of(const FlowGraph& graph,
                                        const MixtureRef& mixture);
// Acts visited while expanding the mixture, ascending.
std::vector<int> contributing_acts(const FlowGraph& graph,
                                   const MixtureRef& mixture);

// The explicit next action of `act_id` followed by every other predecessor
// of it with a larger act id. Empty without a next_action link.
std::vector<int> next_actions(const FlowGraph& graph, int act_id);
// Provenance parents of `act_id` plus actions whose next_action is `act_id`,
// ascending and unique.
std::vector<int> prev_actions(const FlowGraph& graph, int act_id);

struct OrderPair {
  int a = 0;  // smaller act id
  int b = 0;
  int first = 0;  // the ancestor, a or b

  friend bool operator==(const OrderPair&, const OrderPair&) = default;
};
// All comparable pairs under the provenance order, sorted by (a, b).
std::vector<OrderPair> order_pairs(const FlowGraph& graph);

}  // namespace procqa::flow

#endif  // PROCQA_FLOW_FLOWGRAPH_HPP_
