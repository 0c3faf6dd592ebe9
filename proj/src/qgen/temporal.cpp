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

#include "procqa/qgen/temporal.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "procqa/amr/edit.hpp"
#include "procqa/amr/penman.hpp"
#include "procqa/amr/phrase.hpp"

namespace procqa::qgen {
namespace {

using amr::Constant;
using amr::Edge;
using amr::Graph;
using amr::VarRef;
using Kind = TemporalError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& what) { throw TemporalError(kind, what); }

std::string slot_concept(std::size_t k) { return "slot-" + std::to_string(k); }

bool is_slot_concept(std::string_view c) { return c.starts_with("slot-"); }

std::optional<TemplateKind> parse_kind(std::string_view s) {
  if (s == "mixture") return TemplateKind::kMixture;
  if (s == "next") return TemplateKind::kNext;
  if (s == "prev") return TemplateKind::kPrev;
  if (s == "order") return TemplateKind::kOrder;
  return std::nullopt;
}

std::optional<SlotForm> parse_slot_form(std::string_view s) {
  if (s.empty()) return SlotForm::kNone;
  if (s == "noun") return SlotForm::kNoun;
  if (s == "gerund") return SlotForm::kGerund;
  if (s == "imperative") return SlotForm::kImperative;
  return std::nullopt;
}

bool slot_count_ok(TemplateKind kind, std::size_t n) {
  switch (kind) {
    case TemplateKind::kMixture:
    case TemplateKind::kPrev:
      return n == 1;
    case TemplateKind::kNext:
      return n <= 1;
    case TemplateKind::kOrder:
      return n == 2;
  }
  return false;
}

Category category_of(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::kMixture:
      return Category::kTemporalMixture;
    case TemplateKind::kNext:
      return Category::kTemporalNext;
    case TemplateKind::kPrev:
      return Category::kTemporalPrev;
    case TemplateKind::kOrder:
      return Category::kTemporalOrder;
  }
  return Category::kTemporalMixture;
}

std::string strip_final_punct(std::string s) {
  while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) || s.back() == '.' ||
                        s.back() == '!' || s.back() == ';')) {
    s.pop_back();
  }
  return s;
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// "a", "a and b", "a, b and c".
std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += i + 1 == items.size() ? " and " : ", ";
    out += items[i];
  }
  return out;
}

// Action graph as a template filler: the imperative mood and the addressee
// belong to the source sentence, not to the question.
Graph as_filler(const Graph& action) { return amr::drop_roles(action, {":mode", ":ARG0"}); }

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<const QuestionTemplate*> of_kind(const std::vector<QuestionTemplate>& templates,
                                             TemplateKind kind) {
  std::vector<const QuestionTemplate*> out;
  for (const auto& t : templates) {
    if (t.kind == kind) out.push_back(&t);
  }
  return out;
}

class ActionIndex {
 public:
  explicit ActionIndex(const std::vector<ActionAmr>& actions) {
    for (const auto& a : actions) by_id_[a.act_id] = &a;
  }
  const ActionAmr& at(int act_id) const {
    auto it = by_id_.find(act_id);
    if (it == by_id_.end()) {
      fail(Kind::kMissingActionAmr, "no graph for act " + std::to_string(act_id));
    }
    return *it->second;
  }

 private:
  std::map<int, const ActionAmr*> by_id_;
};

std::string slot_text(const QuestionTemplate& t, const std::string& realized) {
  return t.slot_form == SlotForm::kGerund ? gerund_phrase(realized) : imperative_phrase(realized);
}

}  // namespace

std::string_view to_string(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::kMixture:
      return "mixture";
    case TemplateKind::kNext:
      return "next";
    case TemplateKind::kPrev:
      return "prev";
    case TemplateKind::kOrder:
      return "order";
  }
  return "?";
}

std::size_t QuestionTemplate::slot_count() const {
  std::size_t n = 0;
  for (const auto& [var, c] : pattern.concepts()) {
    if (is_slot_concept(c)) ++n;
  }
  return n;
}

std::vector<QuestionTemplate> read_templates(std::istream& in) {
  std::vector<QuestionTemplate> out;
  std::set<std::string> ids;
  for (const amr::PenmanBlock& block : amr::read_penman_blocks(in)) {
    const std::string where = "template at line " + std::to_string(block.line);
    QuestionTemplate t;
    t.id = block.meta("id");
    if (t.id.empty()) fail(Kind::kMalformedTemplate, where + ": missing ::id");
    auto kind = parse_kind(block.meta("category"));
    if (!kind) fail(Kind::kMalformedTemplate, where + ": bad ::category");
    t.kind = *kind;
    t.surface = block.meta("surface");
    if (t.surface.empty()) fail(Kind::kMalformedTemplate, where + ": missing ::surface");
    auto form = parse_slot_form(block.meta("slot-form"));
    if (!form) fail(Kind::kMalformedTemplate, where + ": bad ::slot-form");
    t.slot_form = *form;
    try {
      t.pattern = amr::parse_penman(block.text);
    } catch (const amr::PenmanError& e) {
      fail(Kind::kMalformedTemplate, where + ": " + e.what());
    }
    if (!ids.insert(t.id).second) fail(Kind::kDuplicateTemplateId, "duplicate template id " + t.id);

    const std::size_t n = t.slot_count();
    if (!slot_count_ok(t.kind, n)) {
      fail(Kind::kBadPlaceholderCount, t.id + ": " + std::to_string(n) + " slots for a " +
                                           std::string(to_string(t.kind)) + " template");
    }
    std::multiset<std::string> slots;
    for (const auto& [var, c] : t.pattern.concepts()) {
      if (is_slot_concept(c)) slots.insert(c);
    }
    for (std::size_t k = 1; k <= n; ++k) {
      if (slots.count(slot_concept(k)) != 1) {
        fail(Kind::kBadPlaceholderCount, t.id + ": expected one " + slot_concept(k));
      }
      if (t.surface.find("{" + std::to_string(k) + "}") == std::string::npos) {
        fail(Kind::kBadPlaceholderCount, t.id + ": surface lacks {" + std::to_string(k) + "}");
      }
    }
    if (n > 0 && t.slot_form == SlotForm::kNone) {
      fail(Kind::kMalformedTemplate, t.id + ": slotted template needs ::slot-form");
    }
    if (amr::count_unknowns(t.pattern) != 1) {
      fail(Kind::kMalformedTemplate, t.id + ": pattern needs exactly one amr-unknown");
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<QuestionTemplate> load_templates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Kind::kMalformedTemplate, "cannot read " + path.string());
  return read_templates(in);
}

void check_default_set(const std::vector<QuestionTemplate>& templates) {
  std::size_t mixture = 0, after = 0, next_free = 0, prev = 0, order = 0;
  for (const auto& t : templates) {
    switch (t.kind) {
      case TemplateKind::kMixture:
        ++mixture;
        break;
      case TemplateKind::kNext:
        ++(t.slot_count() == 1 ? after : next_free);
        break;
      case TemplateKind::kPrev:
        ++prev;
        break;
      case TemplateKind::kOrder:
        ++order;
        break;
    }
  }
  if (mixture != 12 || after == 0 || next_free == 0 || prev == 0 || order != 2) {
    fail(Kind::kMalformedTemplate,
         "template set needs 12 mixture, next, context-free next, prev and 2 order templates; got " +
             std::to_string(mixture) + "/" + std::to_string(after) + "/" +
             std::to_string(next_free) + "/" + std::to_string(prev) + "/" +
             std::to_string(order));
  }
}

Graph instantiate(const QuestionTemplate& tmpl, const std::vector<Graph>& fillers) {
  if (fillers.size() != tmpl.slot_count()) {
    fail(Kind::kBadPlaceholderCount, tmpl.id + ": " + std::to_string(fillers.size()) +
                                         " fillers for " + std::to_string(tmpl.slot_count()) +
                                         " slots");
  }
  Graph g = tmpl.pattern;
  for (std::size_t k = 1; k <= fillers.size(); ++k) {
    std::string slot;
    for (const auto& [var, c] : g.concepts()) {
      if (c == slot_concept(k)) slot = var;
    }
    const std::string root = amr::inplace::merge_disjoint(g, fillers[k - 1]);
    std::vector<Edge> moved;
    for (std::size_t i = g.edges().size(); i-- > 0;) {
      const Edge& e = g.edges()[i];
      if (e.source == slot) {
        moved.insert(moved.begin(), e);
        g.erase_edge(i);
      } else if (e.targets_var() && e.var() == slot) {
        g.set_edge_target(i, VarRef{root});
      }
    }
    for (Edge e : moved) {
      e.source = root;
      g.add_edge(std::move(e));
    }
    if (g.root() == slot) g.set_root(root);
  }
  g.prune_unreachable();
  g.validate();
  return g;
}

std::vector<ActionAmr> extract_action_amrs(const flow::FlowGraph& graph,
                                           const SentenceAmrs& sentence_amrs,
                                           std::vector<std::string>* warnings) {
  std::vector<ActionAmr> out;
  for (const flow::Sentence& s : graph.sentences()) {
    std::vector<int> acts = graph.actions_in_sentence(s.index);
    if (acts.empty()) continue;
    auto found = sentence_amrs.find(s.index);
    if (found == sentence_amrs.end()) {
      fail(Kind::kMissingActionAmr, "no graph for sentence " + std::to_string(s.index));
    }
    const Graph& sg = found->second;
    if (acts.size() == 1) {
      out.push_back({acts.front(), sg, s.text});
      continue;
    }

    // Top-level verb frames of a coordinated instruction.
    std::vector<std::string> frames;
    if (sg.root_concept() == "and") {
      std::vector<std::pair<int, std::string>> ops;
      for (std::size_t i : sg.out_edges(sg.root())) {
        const Edge& e = sg.edges()[i];
        auto idx = amr::role_index(e.role);
        if (e.role.starts_with(":op") && idx && e.targets_var() &&
            amr::is_frame(sg.concept_of(e.var()))) {
          ops.emplace_back(*idx, e.var());
        }
      }
      std::stable_sort(ops.begin(), ops.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [idx, var] : ops) frames.push_back(var);
    }
    std::vector<std::string> assigned(acts.size());
    std::set<std::string> used;
    for (std::size_t i = 0; i < acts.size(); ++i) {
      std::string verb = graph.action(acts[i]).verb;
      std::transform(verb.begin(), verb.end(), verb.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      for (const auto& f : frames) {
        if (!used.count(f) && amr::concept_lemma(sg.concept_of(f)) == verb) {
          assigned[i] = f;
          used.insert(f);
          break;
        }
      }
    }
    if (frames.size() == acts.size()) {
      auto next_free = frames.begin();
      for (auto& a : assigned) {
        if (!a.empty()) continue;
        while (used.count(*next_free)) ++next_free;
        a = *next_free;
        used.insert(a);
      }
    }
    bool ok = std::none_of(assigned.begin(), assigned.end(),
                           [](const std::string& a) { return a.empty(); });
    if (!ok && warnings) {
      warnings->push_back("sentence " + std::to_string(s.index) + ": cannot split " +
                          std::to_string(acts.size()) +
                          " actions from its graph; using the whole graph");
    }
    for (std::size_t i = 0; i < acts.size(); ++i) {
      if (!ok) {
        out.push_back({acts[i], sg, s.text});
        continue;
      }
      Graph sub = amr::extract_subgraph(sg, assigned[i]);
      std::string realized = capitalize(amr::linearize(sub)) + ".";
      out.push_back({acts[i], std::move(sub), std::move(realized)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ActionAmr& a, const ActionAmr& b) { return a.act_id < b.act_id; });
  return out;
}

std::vector<QaCandidate> gen_mixture_questions(const std::string& recipe_id,
                                               const flow::FlowGraph& graph,
                                               const std::vector<QuestionTemplate>& templates) {
  std::vector<QaCandidate> out;
  std::set<std::pair<std::string, std::vector<std::string>>> seen;
  for (const flow::MixtureRef& m : graph.mixtures()) {
    if (!m.named) continue;
    std::vector<std::string> ingredients = flow::ingredients_of(graph, m);
    if (ingredients.empty()) continue;
    std::string name = m.name;
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (!seen.emplace(name, ingredients).second) continue;

    std::vector<Graph> parts;
    for (const auto& ingr : ingredients) parts.push_back(amr::noun_phrase_graph(ingr));
    const Graph answer = amr::conjoin(parts);
    const Graph filler = amr::noun_phrase_graph(m.name);
    std::vector<int> sentences = {graph.action(m.consumer_act).sent_index};
    for (int act : flow::contributing_acts(graph, m)) {
      sentences.push_back(graph.action(act).sent_index);
    }
    Provenance prov{recipe_id, sorted_unique(std::move(sentences)), std::nullopt};

    for (const QuestionTemplate* t : of_kind(templates, TemplateKind::kMixture)) {
      QaCandidate c;
      c.question_amr = instantiate(*t, {filler});
      c.answer_amr = answer;
      c.answer_hint = capitalize(join_list(ingredients)) + ".";
      c.category = Category::kTemporalMixture;
      c.provenance = prov;
      c.template_info = TemplateInfo{t->id, t->surface, {m.name}};
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<QaCandidate> gen_next_prev_questions(const std::string& recipe_id,
                                                 const flow::FlowGraph& graph,
                                                 const std::vector<QuestionTemplate>& templates,
                                                 const std::vector<ActionAmr>& actions) {
  const ActionIndex index(actions);
  std::vector<QaCandidate> out;
  auto emit = [&](TemplateKind kind, int focus, const std::vector<int>& answers) {
    if (answers.empty()) return;
    const ActionAmr& here = index.at(focus);
    const Graph filler = as_filler(here.amr);
    const int focus_sent = graph.action(focus).sent_index;
    for (int a : answers) {
      const ActionAmr& there = index.at(a);
      const int answer_sent = graph.action(a).sent_index;
      for (const QuestionTemplate* t : of_kind(templates, kind)) {
        QaCandidate c;
        const bool slotted = t->slot_count() == 1;
        c.question_amr = slotted ? instantiate(*t, {filler}) : instantiate(*t, {});
        c.answer_amr = there.amr;
        c.answer_hint = there.realized;
        c.category = category_of(kind);
        c.provenance = Provenance{recipe_id, sorted_unique({focus_sent, answer_sent}), answer_sent};
        std::vector<std::string> slots;
        if (slotted) slots.push_back(slot_text(*t, here.realized));
        c.template_info = TemplateInfo{t->id, t->surface, std::move(slots)};
        out.push_back(std::move(c));
      }
    }
  };
  for (const flow::Action& a : graph.actions()) {
    emit(TemplateKind::kNext, a.act_id, flow::next_actions(graph, a.act_id));
  }
  for (const flow::Action& a : graph.actions()) {
    emit(TemplateKind::kPrev, a.act_id, flow::prev_actions(graph, a.act_id));
  }
  return out;
}

std::vector<QaCandidate> gen_order_questions(const std::string& recipe_id,
                                             const flow::FlowGraph& graph,
                                             const std::vector<QuestionTemplate>& templates,
                                             const std::vector<ActionAmr>& actions) {
  const ActionIndex index(actions);
  const auto order_templates = of_kind(templates, TemplateKind::kOrder);
  std::vector<QaCandidate> out;
  for (const flow::OrderPair& p : flow::order_pairs(graph)) {
    const ActionAmr& first = index.at(p.first);
    Graph answer = as_filler(first.amr);
    std::string ord = amr::inplace::add_child(answer, answer.root(), ":ord", "ordinal-entity", "o");
    answer.add_edge({ord, ":value", Constant{"1", false}});
    const int sa = graph.action(p.a).sent_index;
    const int sb = graph.action(p.b).sent_index;
    const Provenance prov{recipe_id, sorted_unique({sa, sb}), graph.action(p.first).sent_index};

    for (const QuestionTemplate* t : order_templates) {
      for (auto [x, y] : {std::pair{p.a, p.b}, std::pair{p.b, p.a}}) {
        const ActionAmr& ax = index.at(x);
        const ActionAmr& ay = index.at(y);
        QaCandidate c;
        c.question_amr = instantiate(*t, {as_filler(ax.amr), as_filler(ay.amr)});
        c.answer_amr = answer;
        c.answer_hint = "First, " + imperative_phrase(first.realized) + ".";
        c.category = Category::kTemporalOrder;
        c.provenance = prov;
        c.template_info = TemplateInfo{
            t->id, t->surface, {slot_text(*t, ax.realized), slot_text(*t, ay.realized)}};
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

std::vector<QaCandidate> gen_temporal_questions(const std::string& recipe_id,
                                                const flow::FlowGraph& graph,
                                                const std::vector<QuestionTemplate>& templates,
                                                const std::vector<ActionAmr>& actions) {
  std::vector<QaCandidate> out = gen_mixture_questions(recipe_id, graph, templates);
  for (auto* part : {&gen_next_prev_questions, &gen_order_questions}) {
    auto more = (*part)(recipe_id, graph, templates, actions);
    std::move(more.begin(), more.end(), std::back_inserter(out));
  }
  return out;
}

std::string gerund_phrase(std::string_view imperative) {
  std::string s = imperative_phrase(imperative);
  auto space = s.find(' ');
  std::string verb = s.substr(0, space);
  std::string rest = space == std::string::npos ? "" : s.substr(space);
  return amr::gerund(verb) + rest;
}

std::string imperative_phrase(std::string_view imperative) {
  std::string s = strip_final_punct(std::string(imperative));
  auto first = s.find_first_not_of(' ');
  if (first == std::string::npos) return {};
  s.erase(0, first);
  auto space = s.find(' ');
  for (std::size_t i = 0; i < std::min(space, s.size()); ++i) {
    s[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
  }
  return s;
}

}  // namespace procqa::qgen
