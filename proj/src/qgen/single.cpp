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

#include "procqa/qgen/single.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <random>
#include <set>

#include "procqa/amr/edit.hpp"
#include "procqa/amr/phrase.hpp"

namespace procqa::qgen {
namespace {

using amr::Edge;
using amr::Graph;
using amr::GraphPath;
using amr::PathStep;
using amr::VarRef;

const std::set<std::string, std::less<>> kDirectRoles = {
    ":duration", ":location", ":instrument", ":mod",   ":domain",
    ":purpose",  ":accompanier", ":degree",  ":value", ":quant"};

const std::set<std::string, std::less<>> kPrepositions = {
    "in",   "on",    "to",   "into",    "over", "onto",  "inside", "with",
    "from", "at",    "for",  "by",      "under", "through", "onto", "until",
    "across", "around", "between"};

const std::set<std::string, std::less<>> kSubjectPronouns = {"i", "we", "you"};

Provenance provenance_of(const SentenceInput& in) {
  return Provenance{in.recipe_id, {in.index}, std::nullopt};
}

QaCandidate role_candidate(const SentenceInput& in, amr::QuestionAnswer qa,
                           std::string role, std::string origin) {
  QaCandidate c;
  c.question_amr = std::move(qa.question);
  c.answer_amr = std::move(qa.answer);
  c.category = Category::kRoleSpecific;
  c.role = std::move(role);
  c.origin_role = std::move(origin);
  c.provenance = provenance_of(in);
  return c;
}

// Instruction-level answers are the instruction itself.
void set_instruction_answer(QaCandidate& c, const SentenceInput& in) {
  if (!in.text.empty()) {
    c.answer_text = in.text;
  } else {
    c.answer_amr = in.amr;
  }
  c.provenance.answer_sentence = in.index;
}

// Number of root edges with `role` before edge `index`.
std::size_t occurrence_of(const Graph& g, std::size_t index) {
  std::size_t occ = 0;
  for (std::size_t i : g.out_edges(g.root(), g.edges()[index].role)) {
    if (i == index) break;
    ++occ;
  }
  return occ;
}

std::set<std::string> core_roles_of_root(const Graph& g) {
  std::set<std::string> keep;
  for (std::size_t i : g.out_edges(g.root())) {
    if (amr::is_core_role(g.edges()[i].role)) keep.insert(g.edges()[i].role);
  }
  return keep;
}

std::string target_concept(const Graph& g, const Edge& e) {
  return e.targets_var() ? g.concept_of(e.var()) : e.constant().value;
}

// Head noun used to find :ARG2 in the sentence text.
std::string head_lemma(const Graph& g, const Edge& e) {
  if (!e.targets_var()) return e.constant().value;
  std::string var = e.var();
  while (g.concept_of(var) == "and" || g.concept_of(var) == "or") {
    auto op1 = g.find_edge(var, ":op1");
    if (!op1 || !g.edges()[*op1].targets_var()) break;
    var = g.edges()[*op1].var();
  }
  return amr::concept_lemma(g.concept_of(var));
}

struct Arg2Signals {
  bool directional_verb = false;
  bool directional_prep = false;
  bool instrument = false;

  bool equivalent() const { return !directional_verb && !directional_prep && !instrument; }
};

Arg2Signals arg2_signals(const SentenceInput& in, const RuleLexicons& lex,
                         const Edge& arg2) {
  const Graph& g = in.amr;
  Arg2Signals s;
  s.instrument = lex.instrument_concepts.count(target_concept(g, arg2)) != 0;
  s.directional_verb =
      lex.directional_verbs.count(amr::concept_lemma(g.root_concept())) != 0;
  if (auto prep = governing_preposition(in.text, head_lemma(g, arg2))) {
    s.directional_prep = lex.directional_prepositions.count(*prep) != 0;
  }
  return s;
}

// Replaces the `occurrence`-th root edge with `role` of `g` by amr-unknown.
std::optional<amr::QuestionAnswer> direct_question(const Graph& g,
                                                   const std::string& role,
                                                   std::size_t occurrence) {
  if (!g.find_edge(g.root(), role, occurrence)) return std::nullopt;
  GraphPath path({{role, occurrence}});
  if (role == ":mod") {
    Graph work = g;
    amr::inplace::remove_role(work, work.root(), ":quant");
    return amr::replace_with_unknown(work, path);
  }
  if (role == ":quant") {
    return amr::replace_with_unknown(
        amr::remove_roles(g, {":ARG1", ":ARG2", ":location", ":quant"}), path);
  }
  return amr::replace_with_unknown(g, path);
}

// :mod and :quant questions on the entity at :ARG1 of `g`.
void add_attribute_questions(const SentenceInput& in, const Graph& g,
                             std::vector<QaCandidate>& out) {
  auto arg1 = g.find_edge(g.root(), ":ARG1");
  if (!arg1 || !g.edges()[*arg1].targets_var()) return;
  const std::string entity = g.edges()[*arg1].var();
  if (entity == g.root()) return;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i : g.out_edges(entity)) {
    const std::string role = g.edges()[i].role;
    std::size_t occ = seen[role]++;
    if (role != ":mod" && role != ":quant") continue;
    GraphPath path({{":ARG1", 0}, {role, occ}});
    Graph work = g;
    if (role == ":mod") amr::inplace::remove_role(work, entity, ":quant");
    out.push_back(role_candidate(in, amr::replace_with_unknown(work, path), role, ":ARG1"));
  }
}

// `g` with the `entity_index`-th conjunct of the :ARG1 compound as the sole
// :ARG1 and the other conjuncts regrouped under :ARG2.
Graph split_arg1(const SentenceInput& in, const RuleLexicons& lex,
                 std::size_t entity_index) {
  Graph h = in.amr;
  const std::string root = h.root();
  const std::string conj = h.edges()[*h.find_edge(root, ":ARG1")].var();
  std::vector<std::size_t> ops;
  for (std::size_t i : h.out_edges(conj)) {
    if (h.edges()[i].role.starts_with(":op")) ops.push_back(i);
  }
  const std::string entity = h.edges()[ops[entity_index]].var();
  std::vector<std::string> others;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (k != entity_index) others.push_back(h.edges()[ops[k]].var());
  }

  h.set_edge_target(*h.find_edge(root, ":ARG1"), VarRef{entity});
  h.erase_edge(ops[entity_index]);

  if (auto arg2 = h.find_edge(root, ":ARG2")) {
    Arg2Signals signals = arg2_signals(in, lex, in.amr.edges()[*in.amr.find_edge(root, ":ARG2")]);
    if (signals.equivalent() && h.edges()[*arg2].targets_var()) {
      const std::string old = h.edges()[*arg2].var();
      std::vector<std::string> items;
      if (h.concept_of(old) == "and") {
        for (std::size_t i : h.out_edges(old)) {
          if (h.edges()[i].role.starts_with(":op") && h.edges()[i].targets_var()) {
            items.push_back(h.edges()[i].var());
          }
        }
      } else {
        items.push_back(old);
      }
      // Placeholder numbers keep list order; renumber_ops makes them 1..n.
      for (const auto& item : items) h.add_edge({conj, ":op999", VarRef{item}});
      h.set_edge_target(*arg2, VarRef{conj});
      amr::inplace::renumber_ops(h, conj);
      h.prune_unreachable();
      return h;
    }
    h.set_edge_role(*arg2, signals.instrument ? ":instrument" : ":location");
  }

  std::size_t after = *h.find_edge(root, ":ARG1") + 1;
  if (others.size() == 1) {
    h.insert_edge(after, {root, ":ARG2", VarRef{others.front()}});
  } else {
    amr::inplace::renumber_ops(h, conj);
    h.insert_edge(after, {root, ":ARG2", VarRef{conj}});
  }
  h.prune_unreachable();
  return h;
}

std::vector<std::string> words_of(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    auto u = static_cast<unsigned char>(ch);
    if (std::isalpha(u)) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

std::string_view to_string(QgenError::Kind kind) {
  switch (kind) {
    case QgenError::Kind::kMissingArg1: return "MissingArg1";
    case QgenError::Kind::kMissingArg2: return "MissingArg2";
    case QgenError::Kind::kUnsupportedRole: return "UnsupportedRole";
    case QgenError::Kind::kNoObjectArgs: return "NoObjectArgs";
    case QgenError::Kind::kNoReplaceableRole: return "NoReplaceableRole";
  }
  return "Unknown";
}

const std::vector<std::string>& supported_roles() {
  static const std::vector<std::string> roles = {
      ":ARG1", ":ARG2",   ":time",        ":duration", ":location",
      ":instrument", ":mod", ":domain", ":purpose", ":accompanier",
      ":degree", ":value", ":quant"};
  return roles;
}

bool is_direct_role(std::string_view role) { return kDirectRoles.count(role) != 0; }

std::optional<std::string> governing_preposition(std::string_view text,
                                                 std::string_view head) {
  if (text.empty() || head.empty()) return std::nullopt;
  const std::string target = amr::singularize(head);
  std::vector<std::string> words = words_of(text);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (amr::singularize(words[i]) != target && words[i] != head) continue;
    for (std::size_t back = 1; back <= 4 && back <= i; ++back) {
      if (kPrepositions.count(words[i - back])) return words[i - back];
    }
    return std::nullopt;
  }
  return std::nullopt;
}

std::vector<QaCandidate> gen_role_questions(const SentenceInput& in,
                                            const RuleLexicons& lex) {
  const Graph& g = in.amr;
  std::vector<QaCandidate> out;
  auto append = [&out](std::vector<QaCandidate> more) {
    for (auto& c : more) out.push_back(std::move(c));
  };
  std::map<std::string, std::size_t> seen;
  for (std::size_t i : g.out_edges(g.root())) {
    const std::string& role = g.edges()[i].role;
    std::size_t occ = seen[role]++;
    if (role == ":ARG1") {
      if (occ == 0) append(gen_arg1_questions(in, lex));
    } else if (role == ":ARG2") {
      if (occ == 0) append(gen_arg2_questions(in, lex));
    } else if (role == ":time") {
      if (occ == 0) {
        if (auto c = gen_time_question(in)) out.push_back(std::move(*c));
      }
    } else if (is_direct_role(role)) {
      if (auto c = gen_direct_role_question(in, role, occ)) out.push_back(std::move(*c));
    }
  }
  append(gen_quantity_questions(in));
  return out;
}

std::vector<QaCandidate> gen_arg1_questions(const SentenceInput& in,
                                            const RuleLexicons& lex) {
  const Graph& g = in.amr;
  auto arg1 = g.find_edge(g.root(), ":ARG1");
  if (!arg1) throw QgenError(QgenError::Kind::kMissingArg1, "graph has no :ARG1");
  std::vector<QaCandidate> out;
  out.push_back(role_candidate(
      in, amr::replace_with_unknown(g, GraphPath::of({":ARG1"})), ":ARG1", ":ARG1"));

  const Edge& e = g.edges()[*arg1];
  std::size_t conjuncts = 0;
  bool splittable = e.targets_var() && g.concept_of(e.var()) == "and";
  if (splittable) {
    for (std::size_t i : g.out_edges(e.var())) {
      const Edge& op = g.edges()[i];
      if (!op.role.starts_with(":op")) continue;
      splittable = splittable && op.targets_var() && op.var() != g.root();
      ++conjuncts;
    }
  }
  if (!splittable) conjuncts = 0;
  if (conjuncts < 2) {
    add_attribute_questions(in, g, out);
    return out;
  }
  for (std::size_t k = 0; k < conjuncts; ++k) {
    Graph split = split_arg1(in, lex, k);
    out.push_back(role_candidate(
        in, amr::replace_with_unknown(split, GraphPath::of({":ARG1"})), ":ARG1", ":ARG1"));
    add_attribute_questions(in, split, out);
  }
  return out;
}

std::vector<QaCandidate> gen_arg2_questions(const SentenceInput& in,
                                            const RuleLexicons& lex) {
  const Graph& g = in.amr;
  auto arg2 = g.find_edge(g.root(), ":ARG2");
  if (!arg2) throw QgenError(QgenError::Kind::kMissingArg2, "graph has no :ARG2");
  Arg2Signals signals = arg2_signals(in, lex, g.edges()[*arg2]);

  std::vector<QaCandidate> out;
  if (signals.instrument || signals.directional_verb || signals.directional_prep) {
    const std::string role = signals.instrument ? ":instrument" : ":location";
    Graph h = g;
    h.set_edge_role(*arg2, role);
    if (auto qa = direct_question(h, role, occurrence_of(h, *arg2))) {
      out.push_back(role_candidate(in, std::move(*qa), role, ":ARG2"));
    }
    return out;
  }

  Graph h = g;
  if (auto arg1 = h.find_edge(h.root(), ":ARG1")) {
    amr::Target first = h.edges()[*arg1].target;
    h.set_edge_target(*arg1, h.edges()[*arg2].target);
    h.set_edge_target(*arg2, first);
  } else {
    h.set_edge_role(*arg2, ":ARG1");
  }
  out.push_back(role_candidate(
      in, amr::replace_with_unknown(h, GraphPath::of({":ARG1"})), ":ARG2", ":ARG2"));
  return out;
}

QaCandidate direct_arg2_question(const SentenceInput& in) {
  if (!in.amr.find_edge(in.amr.root(), ":ARG2")) {
    throw QgenError(QgenError::Kind::kMissingArg2, "graph has no :ARG2");
  }
  return role_candidate(
      in, amr::replace_with_unknown(in.amr, GraphPath::of({":ARG2"})), ":ARG2", ":ARG2");
}

std::optional<QaCandidate> gen_time_question(const SentenceInput& in) {
  const Graph& g = in.amr;
  if (!g.find_edge(g.root(), ":time")) return std::nullopt;
  Graph h = amr::remove_roles(g, {":ARG1", ":ARG2", ":time"});
  std::size_t idx = *h.find_edge(h.root(), ":time");
  const Edge& e = h.edges()[idx];
  std::string text = e.targets_var() ? amr::linearize_from(h, e.var()) : e.constant().value;
  bool until = text.starts_with("until") ||
               (e.targets_var() && h.concept_of(e.var()) == "until");
  if (until) {
    h.set_edge_role(idx, ":extent");
    return role_candidate(
        in, amr::replace_with_unknown(h, GraphPath::of({":extent"})), ":extent", ":time");
  }
  return role_candidate(in, amr::replace_with_unknown(h, GraphPath::of({":time"})),
                        ":time", ":time");
}

std::vector<QaCandidate> gen_quantity_questions(const SentenceInput& in) {
  const Graph& g = in.amr;
  std::vector<QaCandidate> out;
  for (const std::string& var : g.reachable_from(g.root())) {
    const std::string& c = g.concept_of(var);
    if (!c.ends_with("-quantity") || c == "temporal-quantity") continue;
    if (!g.find_edge(var, ":quant")) continue;
    auto path = amr::path_to(g, var);
    if (!path) continue;
    const std::string containing = path->steps().front().role;
    Graph h = amr::remove_roles(g, {":ARG1", ":ARG2", ":location", containing});
    auto qa = amr::replace_with_unknown(h, path->child(":quant"));
    qa.answer = amr::extract_subgraph(h, var);
    out.push_back(role_candidate(in, std::move(qa), ":quant", containing));
  }
  return out;
}

std::optional<QaCandidate> gen_direct_role_question(const SentenceInput& in,
                                                    std::string_view role,
                                                    std::size_t occurrence) {
  if (!is_direct_role(role)) {
    throw QgenError(QgenError::Kind::kUnsupportedRole,
                    "no direct question rule for " + std::string(role));
  }
  const std::string r(role);
  auto qa = direct_question(in.amr, r, occurrence);
  if (!qa) return std::nullopt;
  return role_candidate(in, std::move(*qa), r, r);
}

QaCandidate gen_how_question(const SentenceInput& in) {
  Graph h = amr::remove_roles(in.amr, core_roles_of_root(in.amr));
  amr::inplace::add_child(h, h.root(), ":manner", std::string(amr::kUnknownConcept), "a");
  QaCandidate c;
  c.question_amr = std::move(h);
  c.category = Category::kInstructionHow;
  c.provenance = provenance_of(in);
  set_instruction_answer(c, in);
  return c;
}

std::vector<QaCandidate> gen_what_with_questions(const SentenceInput& in) {
  Graph h = amr::remove_roles(in.amr, core_roles_of_root(in.amr));
  const std::string root = h.root();

  std::vector<std::size_t> object_edges;
  for (std::size_t i : h.out_edges(root)) {
    const Edge& e = h.edges()[i];
    if (e.role != ":ARG0" && e.targets_var() && e.var() != root &&
        h.concept_of(e.var()) != amr::kUnknownConcept) {
      object_edges.push_back(i);
    }
  }
  std::stable_sort(object_edges.begin(), object_edges.end(),
                   [&h](std::size_t a, std::size_t b) {
                     return *amr::role_index(h.edges()[a].role) <
                            *amr::role_index(h.edges()[b].role);
                   });
  std::vector<std::string> entities;
  for (std::size_t i : object_edges) {
    const std::string& var = h.edges()[i].var();
    if (h.concept_of(var) == "and") {
      for (std::size_t k : h.out_edges(var)) {
        const Edge& op = h.edges()[k];
        if (op.role.starts_with(":op") && op.targets_var()) entities.push_back(op.var());
      }
    } else {
      entities.push_back(var);
    }
  }
  if (entities.empty()) {
    throw QgenError(QgenError::Kind::kNoObjectArgs, "no object arguments to group");
  }

  // Drop every non-:ARG0 argument edge; the entities are re-attached below.
  std::vector<std::size_t> drop;
  for (std::size_t i : h.out_edges(root)) {
    if (h.edges()[i].role != ":ARG0") drop.push_back(i);
  }
  h.erase_edges(drop);
  h.set_concept(root, "do-02");
  const std::string unknown = h.fresh_var("a");
  h.add_node(unknown, std::string(amr::kUnknownConcept));

  auto finish = [&](Graph g, const std::string& object) {
    g.add_edge({root, ":ARG2", VarRef{object}});
    g.add_edge({root, ":ARG1", VarRef{unknown}});
    g.prune_unreachable();
    QaCandidate c;
    c.question_amr = std::move(g);
    c.category = Category::kInstructionWhatWith;
    c.provenance = provenance_of(in);
    set_instruction_answer(c, in);
    return c;
  };

  std::vector<QaCandidate> out;
  if (entities.size() > 1) {
    Graph compound = h;
    const std::string conj = compound.fresh_var("a");
    compound.add_node(conj, "and");
    for (std::size_t k = 0; k < entities.size(); ++k) {
      compound.add_edge({conj, ":op" + std::to_string(k + 1), VarRef{entities[k]}});
    }
    out.push_back(finish(std::move(compound), conj));
  }
  for (const std::string& entity : entities) out.push_back(finish(h, entity));
  return out;
}

PolarityPair gen_polarity_questions(const SentenceInput& in,
                                    const std::vector<Graph>& donor_pool,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  static constexpr std::array<const char*, 3> kSubjects = {"i", "we", "you"};
  const std::string subject = kSubjects[rng() % kSubjects.size()];

  Graph yes = amr::drop_roles(in.amr, {":mode"});
  const std::string root = yes.root();
  if (auto arg0 = yes.find_edge(root, ":ARG0")) {
    const Edge& e = yes.edges()[*arg0];
    if (e.targets_var() && kSubjectPronouns.count(yes.concept_of(e.var()))) {
      yes.set_concept(e.var(), subject);
    }
  } else {
    std::string var = yes.fresh_var(subject.substr(0, 1));
    yes.add_node(var, subject);
    yes.insert_edge(0, {root, ":ARG0", VarRef{var}});
  }
  amr::inplace::add_child(yes, root, ":polarity", std::string(amr::kUnknownConcept), "a");

  PolarityPair pair;
  pair.yes.question_amr = yes;
  pair.yes.answer_text = "Yes";
  pair.yes.category = Category::kPolarityYes;
  pair.yes.provenance = provenance_of(in);
  pair.yes.provenance.answer_sentence = in.index;

  struct Option {
    GraphPath path;
    const Graph* donor;
    std::string donor_var;
  };
  std::vector<Option> options;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i : yes.out_edges(root)) {
    const Edge& e = yes.edges()[i];
    std::size_t occ = seen[e.role]++;
    if (e.role == ":polarity" || e.role == ":ARG0" || !e.targets_var() || e.var() == root) {
      continue;
    }
    Graph original = amr::extract_subgraph(yes, e.var());
    for (const Graph& donor : donor_pool) {
      if (donor.empty()) continue;
      for (std::size_t k : donor.out_edges(donor.root(), e.role)) {
        const Edge& d = donor.edges()[k];
        if (!d.targets_var() || d.var() == donor.root()) continue;
        Graph sub = amr::extract_subgraph(donor, d.var());
        if (amr::count_unknowns(sub) != 0 || sub.has_var(donor.root())) continue;
        if (amr::isomorphic(sub, original)) continue;
        options.push_back({GraphPath({{e.role, occ}}), &donor, d.var()});
      }
    }
  }
  if (options.empty()) {
    pair.no_skipped = QgenError::Kind::kNoReplaceableRole;
    return pair;
  }
  const Option& pick = options[rng() % options.size()];
  QaCandidate no;
  no.question_amr = amr::graft_subgraph(yes, pick.path,
                                        amr::extract_subgraph(*pick.donor, pick.donor_var));
  no.answer_text = "No";
  no.category = Category::kPolarityNo;
  no.role = pick.path.steps().front().role;
  no.origin_role = no.role;
  no.provenance = provenance_of(in);
  no.provenance.answer_sentence = in.index;
  pair.no = std::move(no);
  return pair;
}

SingleResult gen_single_questions(const SentenceInput& in,
                                  const std::vector<Graph>& donor_pool,
                                  const RuleLexicons& lex, std::uint64_t seed) {
  SingleResult result;
  auto record = [&](std::string_view what, const std::exception& e) {
    result.skipped.push_back(std::string(what) + ": " + e.what());
  };
  auto append = [&](std::vector<QaCandidate> more) {
    for (auto& c : more) result.candidates.push_back(std::move(c));
  };
  try {
    append(gen_role_questions(in, lex));
  } catch (const std::exception& e) {
    record("role_specific", e);
  }
  try {
    result.candidates.push_back(gen_how_question(in));
  } catch (const std::exception& e) {
    record("instruction_how", e);
  }
  try {
    append(gen_what_with_questions(in));
  } catch (const QgenError& e) {
    result.skipped.push_back("instruction_what_with: " + std::string(to_string(e.kind())));
  } catch (const std::exception& e) {
    record("instruction_what_with", e);
  }
  try {
    PolarityPair pair = gen_polarity_questions(in, donor_pool, seed);
    result.candidates.push_back(std::move(pair.yes));
    if (pair.no) {
      result.candidates.push_back(std::move(*pair.no));
    } else {
      result.skipped.push_back("polarity_no: " + std::string(to_string(*pair.no_skipped)));
    }
  } catch (const std::exception& e) {
    record("polarity", e);
  }
  return result;
}

}  // namespace procqa::qgen
