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

#include "procqa/flow/flowgraph.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace procqa::flow {
namespace {

using Kind = FlowGraphError::Kind;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(Kind kind, const std::string& what) {
  throw FlowGraphError(kind, what);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void check_refs(const Action& a, const std::vector<ItemRef>& refs, const char* field) {
  for (const ItemRef& r : refs) {
    std::string where = "act " + std::to_string(a.act_id) + " " + field + " '" + r.name + "'";
    if (r.name.empty()) fail(Kind::kSchemaViolation, "empty name in act " + std::to_string(a.act_id));
    if (r.provenance < kRaw) fail(Kind::kSchemaViolation, where + ": provenance below -1");
    if (r.provenance >= a.act_id) {
      fail(Kind::kForwardProvenance,
           where + ": provenance " + std::to_string(r.provenance) + " is not an earlier act");
    }
  }
}

std::vector<ItemRef> read_refs(const ordered_json& obj, const std::string& where) {
  if (!obj.is_object()) fail(Kind::kSchemaViolation, where + " must be an object");
  std::vector<ItemRef> out;
  for (const auto& [name, value] : obj.items()) {
    if (!value.is_number_integer()) {
      fail(Kind::kSchemaViolation, where + "['" + name + "'] must be an integer");
    }
    out.push_back({name, value.get<int>()});
  }
  return out;
}

template <typename Json>
const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(Kind::kSchemaViolation, where + ": missing '" + key + "'");
  return *it;
}

}  // namespace

bool is_unnamed_reference(std::string_view name) {
  static const std::set<std::string, std::less<>> kStop = {
      "it", "them", "they", "this", "these", "that", "those", "implicit"};
  return kStop.count(lower(name)) != 0;
}

FlowGraph::FlowGraph(std::vector<Sentence> sentences, std::vector<Action> actions)
    : sentences_(std::move(sentences)), actions_(std::move(actions)) {
  const int n = static_cast<int>(actions_.size());
  for (std::size_t i = 1; i < sentences_.size(); ++i) {
    if (sentences_[i].index <= sentences_[i - 1].index) {
      fail(Kind::kSchemaViolation, "sentence indices must increase");
    }
  }
  std::set<int> known_sentences;
  for (const Sentence& s : sentences_) known_sentences.insert(s.index);
  for (int i = 0; i < n; ++i) {
    const Action& a = actions_[static_cast<std::size_t>(i)];
    if (a.act_id != i) {
      fail(Kind::kSchemaViolation, "act ids must be 0..n-1 in order; found " +
                                       std::to_string(a.act_id) + " at position " +
                                       std::to_string(i));
    }
    if (!known_sentences.count(a.sent_index)) {
      fail(Kind::kSchemaViolation, "act " + std::to_string(i) + " refers to unknown sentence");
    }
    if (i > 0 && a.sent_index < actions_[static_cast<std::size_t>(i - 1)].sent_index) {
      fail(Kind::kSchemaViolation, "act ids must follow sentence order");
    }
    if (a.verb.empty()) fail(Kind::kSchemaViolation, "act " + std::to_string(i) + " has no verb");
    check_refs(a, a.inputs, "input");
    check_refs(a, a.cookware, "cookware");
    for (const ItemRef& r : a.inputs) {
      if (r.name == kImplicit && r.provenance < 0) {
        fail(Kind::kSchemaViolation,
             "act " + std::to_string(i) + ": implicit input needs a producing act");
      }
    }
    if (a.next_action && (*a.next_action < 0 || *a.next_action >= n)) {
      fail(Kind::kSchemaViolation, "act " + std::to_string(i) + ": next_action out of range");
    }
  }

  // Provenance edges always point forward, so only next_action links can
  // close a cycle; check the union anyway.
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
  for (const Action& a : actions_) {
    for (int p : provenance_parents(a.act_id)) succ[static_cast<std::size_t>(p)].push_back(a.act_id);
    if (a.next_action) succ[static_cast<std::size_t>(a.act_id)].push_back(*a.next_action);
  }
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  std::function<void(int)> visit = [&](int v) {
    color[static_cast<std::size_t>(v)] = 1;
    for (int w : succ[static_cast<std::size_t>(v)]) {
      if (color[static_cast<std::size_t>(w)] == 1) {
        fail(Kind::kCycleDetected, "cycle through act " + std::to_string(w));
      }
      if (color[static_cast<std::size_t>(w)] == 0) visit(w);
    }
    color[static_cast<std::size_t>(v)] = 2;
  };
  for (int v = 0; v < n; ++v) {
    if (color[static_cast<std::size_t>(v)] == 0) visit(v);
  }

  reach_.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int j = 0; j < n; ++j) {
    for (int p : provenance_parents(j)) {
      reach_[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)] = true;
      for (int i = 0; i < p; ++i) {
        if (reach_[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)]) {
          reach_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
        }
      }
    }
  }
}

const std::string& FlowGraph::sentence_text(int sent_index) const {
  static const std::string kEmpty;
  for (const Sentence& s : sentences_) {
    if (s.index == sent_index) return s.text;
  }
  return kEmpty;
}

std::vector<int> FlowGraph::actions_in_sentence(int sent_index) const {
  std::vector<int> out;
  for (const Action& a : actions_) {
    if (a.sent_index == sent_index) out.push_back(a.act_id);
  }
  return out;
}

std::vector<int> FlowGraph::provenance_parents(int act_id) const {
  std::set<int> parents;
  const Action& a = action(act_id);
  for (const ItemRef& r : a.inputs) {
    if (r.provenance >= 0) parents.insert(r.provenance);
  }
  for (const ItemRef& r : a.cookware) {
    if (r.provenance >= 0) parents.insert(r.provenance);
  }
  return {parents.begin(), parents.end()};
}

bool FlowGraph::reaches(int from, int to) const {
  return reach_.at(static_cast<std::size_t>(from)).at(static_cast<std::size_t>(to));
}

std::vector<MixtureRef> FlowGraph::mixtures() const {
  std::vector<MixtureRef> out;
  for (const Action& a : actions_) {
    for (const ItemRef& r : a.inputs) {
      if (r.provenance < 0) continue;
      out.push_back({r.name, r.provenance, a.act_id, !is_unnamed_reference(r.name)});
    }
  }
  return out;
}

FlowGraph flowgraph_from_json(const ordered_json& doc) {
  if (!doc.is_array()) fail(Kind::kSchemaViolation, "flow graph must be a list of sentences");
  std::vector<Sentence> sentences;
  std::vector<Action> actions;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const ordered_json& rec = doc[i];
    std::string where = "sentence record " + std::to_string(i);
    if (!rec.is_object()) fail(Kind::kSchemaViolation, where + " must be an object");
    const auto& idx = require(rec, "sent_index", where);
    const auto& text = require(rec, "sent", where);
    const auto& acts = require(rec, "actions", where);
    if (!idx.is_number_integer() || !text.is_string() || !acts.is_array()) {
      fail(Kind::kSchemaViolation, where + ": wrong field types");
    }
    sentences.push_back({idx.get<int>(), text.get<std::string>()});
    for (const ordered_json& act : acts) {
      std::string aw = where + " action";
      if (!act.is_object()) fail(Kind::kSchemaViolation, aw + " must be an object");
      const auto& id = require(act, "act_id", aw);
      const auto& verb = require(act, "action", aw);
      if (!id.is_number_integer() || !verb.is_string()) {
        fail(Kind::kSchemaViolation, aw + ": wrong field types");
      }
      Action a;
      a.act_id = id.get<int>();
      a.sent_index = sentences.back().index;
      a.verb = verb.get<std::string>();
      aw = "act " + std::to_string(a.act_id);
      a.inputs = read_refs(require(act, "input", aw), aw + " input");
      if (auto it = act.find("cookware"); it != act.end()) {
        a.cookware = read_refs(*it, aw + " cookware");
      }
      if (auto it = act.find("next_action"); it != act.end() && !it->is_null()) {
        if (!it->is_number_integer()) fail(Kind::kSchemaViolation, aw + ": next_action must be an integer");
        a.next_action = it->get<int>();
      }
      actions.push_back(std::move(a));
    }
  }
  return FlowGraph(std::move(sentences), std::move(actions));
}

FlowGraph parse_flowgraph(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    fail(Kind::kSchemaViolation, std::string("invalid JSON: ") + e.what());
  }
  return flowgraph_from_json(doc);
}

FlowGraph load_flowgraph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Kind::kSchemaViolation, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_flowgraph(buf.str());
}

ordered_json to_json(const FlowGraph& graph) {
  ordered_json out = ordered_json::array();
  for (const Sentence& s : graph.sentences()) {
    ordered_json rec;
    rec["sent_index"] = s.index;
    rec["sent"] = s.text;
    rec["actions"] = ordered_json::array();
    for (int id : graph.actions_in_sentence(s.index)) {
      const Action& a = graph.action(id);
      ordered_json act;
      act["act_id"] = a.act_id;
      act["action"] = a.verb;
      act["input"] = ordered_json::object();
      for (const ItemRef& r : a.inputs) act["input"][r.name] = r.provenance;
      act["cookware"] = ordered_json::object();
      for (const ItemRef& r : a.cookware) act["cookware"][r.name] = r.provenance;
      if (a.next_action) act["next_action"] = *a.next_action;
      rec["actions"].push_back(std::move(act));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

void expand(const FlowGraph& graph, int act, std::vector<std::string>& names,
            std::set<std::string>& seen, std::set<int>& acts) {
  acts.insert(act);
  for (const ItemRef& r : graph.action(act).inputs) {
    if (r.provenance < 0) {
      if (seen.insert(r.name).second) names.push_back(r.name);
    } else {
      expand(graph, r.provenance, names, seen, acts);
    }
  }
}

}  // namespace

std::vector<std::string> ingredients_of(const FlowGraph& graph, const MixtureRef& mixture) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  std::set<int> acts;
  expand(graph, mixture.producing_act, names, seen, acts);
  return names;
}

std::vector<int> contributing_acts(const FlowGraph& graph, const MixtureRef& mixture) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  std::set<int> acts;
  expand(graph, mixture.producing_act, names, seen, acts);
  return {acts.begin(), acts.end()};
}

std::vector<int> prev_actions(const FlowGraph& graph, int act_id) {
  std::set<int> out;
  for (int p : graph.provenance_parents(act_id)) out.insert(p);
  for (const Action& a : graph.actions()) {
    if (a.next_action == act_id) out.insert(a.act_id);
  }
  return {out.begin(), out.end()};
}

std::vector<int> next_actions(const FlowGraph& graph, int act_id) {
  const Action& action = graph.action(act_id);
  if (!action.next_action) return {};
  std::vector<int> out = {*action.next_action};
  for (int a : prev_actions(graph, *action.next_action)) {
    if (a > act_id && a != *action.next_action) out.push_back(a);
  }
  return out;
}

std::vector<OrderPair> order_pairs(const FlowGraph& graph) {
  std::vector<OrderPair> out;
  const int n = static_cast<int>(graph.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (graph.reaches(a, b)) {
        out.push_back({a, b, a});
      } else if (graph.reaches(b, a)) {
        out.push_back({a, b, b});
      }
    }
  }
  return out;
}

}  // namespace procqa::flow
