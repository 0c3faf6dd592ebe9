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

#include "procqa/amr/phrase.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "procqa/amr/edit.hpp"

namespace procqa::amr {
namespace {

const std::set<std::string, std::less<>> kDeterminers = {
    "the", "a", "an", "some", "of", "your", "our"};

const std::map<std::string, int, std::less<>> kNumberWords = {
    {"one", 1}, {"two", 2},   {"three", 3}, {"four", 4},  {"five", 5},
    {"six", 6}, {"seven", 7}, {"eight", 8}, {"nine", 9},  {"ten", 10},
    {"half", 0}};

bool is_vowel(char c) { return std::string_view("aeiou").find(c) != std::string_view::npos; }

bool is_number(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '/';
  });
}

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '-' || c == '\'' || c == '.' || c == '/') {
      current.push_back(static_cast<char>(std::tolower(u)));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  for (auto& w : out) {
    while (!w.empty() && (w.back() == '.' || w.back() == '\'')) w.pop_back();
  }
  std::erase_if(out, [](const std::string& w) { return w.empty(); });
  return out;
}

std::string first_letter(std::string_view s) {
  for (char c : s) {
    if (std::isalpha(static_cast<unsigned char>(c))) return std::string(1, c);
  }
  return "x";
}

}  // namespace

std::string singularize(std::string_view noun) {
  std::string w(noun);
  auto ends = [&](std::string_view suffix) { return w.ends_with(suffix); };
  if (w.size() <= 3) return w;
  if (ends("ies")) return w.substr(0, w.size() - 3) + "y";
  if (ends("oes") || ends("ches") || ends("shes") || ends("xes") ||
      ends("sses")) {
    return w.substr(0, w.size() - 2);
  }
  if (ends("ss") || ends("us") || ends("is")) return w;
  if (ends("s")) return w.substr(0, w.size() - 1);
  return w;
}

std::string pluralize(std::string_view noun) {
  std::string w(noun);
  if (w.empty()) return w;
  if (w.ends_with("s") || w.ends_with("x") || w.ends_with("ch") ||
      w.ends_with("sh") || w.ends_with("o")) {
    return w + "es";
  }
  if (w.size() > 1 && w.back() == 'y' && !is_vowel(w[w.size() - 2])) {
    return w.substr(0, w.size() - 1) + "ies";
  }
  return w + "s";
}

namespace {

// Consonant-vowel-consonant endings double their final consonant.
bool doubles_final(std::string_view verb) {
  if (verb.size() < 3 || verb.size() > 4) return false;
  char a = verb[verb.size() - 3], b = verb[verb.size() - 2], c = verb.back();
  return !is_vowel(a) && is_vowel(b) && !is_vowel(c) && c != 'w' && c != 'x' &&
         c != 'y';
}

}  // namespace

std::string past_participle(std::string_view verb) {
  std::string w(verb);
  if (w.empty()) return w;
  if (w.back() == 'e') return w + "d";
  if (w.size() > 1 && w.back() == 'y' && !is_vowel(w[w.size() - 2])) {
    return w.substr(0, w.size() - 1) + "ied";
  }
  if (doubles_final(w)) return w + w.back() + "ed";
  return w + "ed";
}

std::string gerund(std::string_view verb) {
  std::string w(verb);
  if (w.empty()) return w;
  if (w.size() > 2 && w.back() == 'e' && w[w.size() - 2] != 'e') {
    return w.substr(0, w.size() - 1) + "ing";
  }
  if (doubles_final(w)) return w + w.back() + "ing";
  return w + "ing";
}

std::string participle_stem(std::string_view word) {
  std::string w(word);
  if (!w.ends_with("ed") || w.size() < 5) return w;
  if (w.ends_with("ied")) return w.substr(0, w.size() - 3) + "y";
  std::string stem = w.substr(0, w.size() - 2);
  std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
      stem[n - 1] != 's' && stem[n - 1] != 'l') {
    return stem.substr(0, n - 1);
  }
  char last = stem.back();
  if (last == 'c' || last == 'v' || last == 'z' || last == 'g') return stem + "e";
  if (n >= 3 && (last == 't' || last == 'd' || last == 's') && is_vowel(stem[n - 2]) &&
      !is_vowel(stem[n - 3])) {
    // grat -> grate, slic handled above, dic -> dice
    return stem + "e";
  }
  return stem;
}

Graph noun_phrase_graph(std::string_view phrase) {
  std::vector<std::string> tokens = words(phrase);
  std::erase_if(tokens, [](const std::string& t) { return kDeterminers.count(t) != 0; });
  if (tokens.empty()) return Graph("t", "thing");

  std::string head = singularize(tokens.back());
  Graph graph(first_letter(head), head);
  const std::string root = graph.root();
  std::vector<std::string> participles;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (auto it = kNumberWords.find(t); it != kNumberWords.end() && it->second > 0) {
      graph.add_edge({root, ":quant", Constant{std::to_string(it->second), false}});
    } else if (is_number(t)) {
      graph.add_edge({root, ":quant", Constant{t, false}});
    } else if (t.size() > 4 && t.ends_with("ed")) {
      participles.push_back(participle_stem(t));
    } else {
      inplace::add_child(graph, root, ":mod", t, first_letter(t));
    }
  }
  for (const std::string& verb : participles) {
    inplace::add_child(graph, root, ":ARG1-of", verb + "-01", first_letter(verb));
  }
  return graph;
}

Graph conjoin(const std::vector<Graph>& parts) {
  if (parts.empty()) return Graph("t", "thing");
  if (parts.size() == 1) return parts.front();
  Graph out("a", "and");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::string var = inplace::merge_disjoint(out, parts[i]);
    out.add_edge({"a", ":op" + std::to_string(i + 1), VarRef{var}});
  }
  return out;
}

namespace {

class Linearizer {
 public:
  explicit Linearizer(const Graph& graph) : g_(graph) {}

  std::string render(const std::string& var) {
    if (!active_.insert(var).second) return pronoun(var);
    std::string out = render_node(var);
    active_.erase(var);
    return out;
  }

 private:
  std::string pronoun(const std::string& var) {
    const std::string& c = g_.concept_of(var);
    if (c == "you" || c == "we" || c == "i" || c == "they") return c == "i" ? "I" : c;
    return "it";
  }

  std::string text_of(const Edge& e) {
    if (!e.targets_var()) return e.constant().value;
    return render(e.var());
  }

  std::vector<std::string> collect(const std::string& var, std::string_view role) {
    std::vector<std::string> out;
    for (std::size_t i : g_.out_edges(var, role)) {
      std::string t = text_of(g_.edges()[i]);
      if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
  }

  static std::string join_list(const std::vector<std::string>& items,
                               std::string_view conj) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out += (i + 1 == items.size()) ? " " + std::string(conj) + " " : ", ";
      out += items[i];
    }
    return out;
  }

  static void append(std::string& out, const std::string& piece,
                     std::string_view prefix = "") {
    if (piece.empty()) return;
    if (!out.empty()) out.push_back(' ');
    if (!prefix.empty()) {
      out += prefix;
      out.push_back(' ');
    }
    out += piece;
  }

  std::string render_node(const std::string& var) {
    const std::string& c = g_.concept_of(var);
    if (c == kUnknownConcept) return "";
    if (c == "and" || c == "or") {
      std::vector<std::string> ops;
      for (std::size_t i : g_.out_edges(var)) {
        const Edge& e = g_.edges()[i];
        if (role_index(e.role) && e.role.starts_with(":op")) {
          std::string t = text_of(e);
          if (!t.empty()) ops.push_back(std::move(t));
        }
      }
      return join_list(ops, c);
    }
    if (c.ends_with("-quantity")) {
      std::string out;
      for (auto& q : collect(var, ":quant")) append(out, q);
      for (std::size_t i : g_.out_edges(var, ":unit")) {
        std::string unit = text_of(g_.edges()[i]);
        bool plural = false;
        for (std::size_t k : g_.out_edges(var, ":quant")) {
          const Edge& e = g_.edges()[k];
          plural = !e.targets_var() && e.constant().value != "1";
        }
        append(out, plural ? pluralize(unit) : unit);
      }
      for (auto& s : collect(var, ":scale")) append(out, s);
      return out.empty() ? concept_lemma(c) : out;
    }
    if (is_frame(c) && !nominal_frame(var)) return render_frame(var);
    return render_noun(var);
  }

  // A frame carrying only modifiers reads as a noun: heat-01 :mod medium
  // renders "medium heat".
  bool nominal_frame(const std::string& var) const {
    const auto out = g_.out_edges(var);
    return !out.empty() && std::all_of(out.begin(), out.end(), [this](std::size_t i) {
      return g_.edges()[i].role == ":mod";
    });
  }

  std::string render_frame(const std::string& var) {
    std::string out = concept_lemma(g_.concept_of(var));
    for (std::size_t i : g_.out_edges(var)) {
      const Edge& e = g_.edges()[i];
      if (e.role == ":ARG0" || e.role == ":mode" || e.role == ":polarity") continue;
      std::string t = text_of(e);
      if (e.role == ":ARG1" || e.role == ":op1") {
        append(out, t);
      } else if (e.role == ":ARG2") {
        append(out, t, "with");
      } else if (e.role == ":location") {
        append(out, t, "in");
      } else if (e.role == ":accompanier" || e.role == ":instrument") {
        append(out, t, "with");
      } else if (e.role == ":manner" && e.targets_var() &&
                 concept_lemma(g_.concept_of(e.var())) == "heat") {
        append(out, t, "over");
      } else if (e.role == ":duration") {
        append(out, t, "for");
      } else if (e.role == ":purpose") {
        append(out, t, "to");
      } else if (e.role == ":destination") {
        append(out, t, "into");
      } else if (e.role.ends_with("-of")) {
        continue;
      } else {
        append(out, t);
      }
    }
    return out;
  }

  std::string render_noun(const std::string& var) {
    std::string out;
    bool plural = false;
    for (std::size_t i : g_.out_edges(var, ":quant")) {
      const Edge& e = g_.edges()[i];
      std::string q = text_of(e);
      append(out, q);
      plural = plural || (!e.targets_var() && q != "1");
    }
    for (auto& m : collect(var, ":mod")) append(out, m);
    for (std::size_t i : g_.out_edges(var, ":ARG1-of")) {
      const Edge& e = g_.edges()[i];
      if (e.targets_var() && is_frame(g_.concept_of(e.var())) &&
          g_.out_edges(e.var()).empty()) {
        append(out, past_participle(concept_lemma(g_.concept_of(e.var()))));
      }
    }
    std::string head = concept_lemma(g_.concept_of(var));
    append(out, plural ? pluralize(head) : head);
    for (auto& p : collect(var, ":part-of")) append(out, p, "of");
    for (auto& p : collect(var, ":poss")) append(out, p, "of");
    for (auto& p : collect(var, ":location")) append(out, p, "in");
    return out;
  }

  const Graph& g_;
  std::unordered_set<std::string> active_;
};

}  // namespace

std::string linearize(const Graph& graph) {
  if (graph.empty()) return "";
  return linearize_from(graph, graph.root());
}

std::string linearize_from(const Graph& graph, const std::string& var) {
  return Linearizer(graph).render(var);
}

}  // namespace procqa::amr
