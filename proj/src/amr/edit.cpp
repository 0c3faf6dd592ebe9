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

#include "procqa/amr/edit.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <unordered_set>

namespace procqa::amr {
namespace {

std::string prefix_for(std::string_view concept_label) {
  for (char c : concept_label) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      return std::string(1, static_cast<char>(std::tolower(
                                static_cast<unsigned char>(c))));
    }
  }
  return "x";
}

constexpr std::string_view kMarker = "\x01detached";

// Detaches the target of `edge_index` and prunes; returns the edge's new index.
std::size_t detach_target(Graph& graph, std::size_t edge_index) {
  graph.set_edge_target(edge_index, Constant{std::string(kMarker), false});
  graph.prune_unreachable();
  for (std::size_t i = 0; i < graph.edges().size(); ++i) {
    const Edge& e = graph.edges()[i];
    if (!e.targets_var() && e.constant().value == kMarker) return i;
  }
  assert(false && "detached edge vanished");
  return 0;
}

void debug_check(const Graph& graph) {
#ifndef NDEBUG
  graph.validate();
#else
  (void)graph;
#endif
}

}  // namespace

GraphPath GraphPath::of(std::initializer_list<const char*> roles) {
  std::vector<PathStep> steps;
  for (const char* r : roles) steps.push_back({r, 0});
  return GraphPath(std::move(steps));
}

GraphPath GraphPath::child(std::string role, std::size_t occurrence) const {
  GraphPath out = *this;
  out.steps_.push_back({std::move(role), occurrence});
  return out;
}

std::string GraphPath::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (i) out += " ";
    out += steps_[i].role;
    if (steps_[i].occurrence) out += "#" + std::to_string(steps_[i].occurrence);
  }
  return out + "]";
}

std::optional<std::size_t> try_resolve_path(const Graph& graph,
                                            const GraphPath& path) {
  if (path.empty() || graph.empty()) return std::nullopt;
  std::string node = graph.root();
  std::optional<std::size_t> edge;
  for (const PathStep& step : path.steps()) {
    if (edge && !graph.edges()[*edge].targets_var()) return std::nullopt;
    if (edge) node = graph.edges()[*edge].var();
    edge = graph.find_edge(node, step.role, step.occurrence);
    if (!edge) return std::nullopt;
  }
  return edge;
}

std::size_t resolve_path(const Graph& graph, const GraphPath& path) {
  auto edge = try_resolve_path(graph, path);
  if (!edge) {
    throw EditError(EditError::Kind::kPathNotFound,
                    "path " + path.str() + " does not resolve");
  }
  return *edge;
}

std::optional<GraphPath> path_to(const Graph& graph, const std::string& var) {
  if (!graph.has_var(var) || var == graph.root()) return std::nullopt;
  std::unordered_set<std::string> seen;
  std::optional<GraphPath> found;
  std::function<void(const std::string&, const GraphPath&)> visit =
      [&](const std::string& node, const GraphPath& prefix) {
        seen.insert(node);
        std::map<std::string, std::size_t> counts;
        for (std::size_t i : graph.out_edges(node)) {
          if (found) return;
          const Edge& e = graph.edges()[i];
          std::size_t occurrence = counts[e.role]++;
          if (!e.targets_var() || seen.count(e.var())) continue;
          GraphPath here = prefix.child(e.role, occurrence);
          if (e.var() == var) {
            found = here;
            return;
          }
          visit(e.var(), here);
        }
      };
  visit(graph.root(), GraphPath{});
  return found;
}

QuestionAnswer replace_with_unknown(const Graph& graph, const GraphPath& path) {
  std::size_t edge_index = resolve_path(graph, path);
  const Edge& edge = graph.edges()[edge_index];
  Graph question = graph;
  Graph answer;
  if (edge.targets_var()) {
    answer = extract_subgraph(graph, edge.var());
  } else {
    if (edge.role == ":mode") {
      throw EditError(EditError::Kind::kPathTargetsConstant,
                      "constant under :mode cannot be questioned");
    }
    answer = Graph(prefix_for(edge.constant().value), edge.constant().value);
  }
  edge_index = detach_target(question, edge_index);
  std::string unknown = question.fresh_var("a");
  question.add_node(unknown, std::string(kUnknownConcept));
  question.set_edge_target(edge_index, VarRef{unknown});
  answer.set_id(graph.id());
  debug_check(question);
  return {std::move(question), std::move(answer)};
}

namespace inplace {

std::string add_child(Graph& graph, const std::string& source,
                      const std::string& role, const std::string& concept_label,
                      std::string_view var_prefix) {
  std::string var = graph.fresh_var(var_prefix.empty() ? prefix_for(concept_label)
                                                       : std::string(var_prefix));
  graph.add_node(var, concept_label);
  graph.add_edge({source, role, VarRef{var}});
  return var;
}

std::string merge_disjoint(Graph& host, const Graph& donor) {
  std::set<std::string> taken;
  for (const auto& kv : host.concepts()) taken.insert(kv.first);
  for (const auto& kv : donor.concepts()) taken.insert(kv.first);
  std::map<std::string, std::string> rename;
  for (const auto& [var, concept_label] : donor.concepts()) {
    std::string name = var;
    if (host.has_var(var)) {
      for (int k = 1;; ++k) {
        name = var + "_" + std::to_string(k);
        if (!taken.count(name)) break;
      }
      taken.insert(name);
    }
    rename.emplace(var, name);
    host.add_node(name, concept_label);
  }
  for (Edge e : donor.edges()) {
    e.source = rename.at(e.source);
    if (e.targets_var()) e.target = VarRef{rename.at(e.var())};
    host.add_edge(std::move(e));
  }
  return rename.at(donor.root());
}

void remove_role(Graph& graph, const std::string& source,
                 const std::string& role) {
  graph.erase_edges(graph.out_edges(source, role));
  graph.prune_unreachable();
}

void renumber_ops(Graph& graph, const std::string& source) {
  int next = 1;
  for (std::size_t i : graph.out_edges(source)) {
    if (graph.edges()[i].role.starts_with(":op") &&
        role_index(graph.edges()[i].role)) {
      graph.set_edge_role(i, ":op" + std::to_string(next++));
    }
  }
}

}  // namespace inplace

Graph graft_subgraph(const Graph& graph, const GraphPath& path,
                     const Graph& donor) {
  std::size_t edge_index = resolve_path(graph, path);
  donor.validate();
  Graph out = graph;
  edge_index = detach_target(out, edge_index);
  std::string root = inplace::merge_disjoint(out, donor);
  out.set_edge_target(edge_index, VarRef{root});
  debug_check(out);
  return out;
}

Graph remove_roles(const Graph& graph, const std::set<std::string>& keep) {
  Graph out = graph;
  std::vector<std::size_t> drop;
  for (std::size_t i : out.out_edges(out.root())) {
    if (!keep.count(out.edges()[i].role)) drop.push_back(i);
  }
  out.erase_edges(std::move(drop));
  out.prune_unreachable();
  debug_check(out);
  return out;
}

Graph drop_roles(const Graph& graph, const std::set<std::string>& drop) {
  Graph out = graph;
  std::vector<std::size_t> doomed;
  for (std::size_t i : out.out_edges(out.root())) {
    if (drop.count(out.edges()[i].role)) doomed.push_back(i);
  }
  out.erase_edges(std::move(doomed));
  out.prune_unreachable();
  debug_check(out);
  return out;
}

std::size_t count_unknowns(const Graph& graph) {
  return static_cast<std::size_t>(std::count_if(
      graph.concepts().begin(), graph.concepts().end(),
      [](const auto& kv) { return kv.second == kUnknownConcept; }));
}

}  // namespace procqa::amr
