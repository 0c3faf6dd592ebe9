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

#include "procqa/amr/graph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace procqa::amr {

RoleLabel::RoleLabel(std::string_view label) {
  if (!valid(label)) {
    throw std::invalid_argument("invalid role label: " + std::string(label));
  }
  std::string_view body = label;
  if (body.size() > 4 && body.ends_with("-of") && body != ":consist-of") {
    inverse_ = true;
    body.remove_suffix(3);
  }
  base_ = std::string(body);
}

bool RoleLabel::valid(std::string_view label) {
  if (label.size() < 2 || label.front() != ':') return false;
  return std::all_of(label.begin() + 1, label.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
  });
}

namespace {

std::optional<int> numeric_suffix(std::string_view role,
                                  std::string_view prefix) {
  if (!role.starts_with(prefix) || role.size() == prefix.size()) {
    return std::nullopt;
  }
  int value = 0;
  for (char c : role.substr(prefix.size())) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

bool is_core_role(std::string_view role) {
  return numeric_suffix(role, ":ARG").has_value();
}

std::optional<int> role_index(std::string_view role) {
  if (auto n = numeric_suffix(role, ":op")) return n;
  return numeric_suffix(role, ":ARG");
}

Graph::Graph(std::string root, std::string root_concept)
    : root_(std::move(root)) {
  concepts_.emplace(root_, std::move(root_concept));
}

bool Graph::has_var(std::string_view var) const {
  return concepts_.find(std::string(var)) != concepts_.end();
}

const std::string& Graph::concept_of(std::string_view var) const {
  auto it = concepts_.find(std::string(var));
  if (it == concepts_.end()) {
    throw GraphError(GraphError::Kind::kUnknownVariable,
                     "unknown variable: " + std::string(var));
  }
  return it->second;
}

std::vector<std::size_t> Graph::out_edges(std::string_view var) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].source == var) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Graph::out_edges(std::string_view var,
                                          std::string_view role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].source == var && edges_[i].role == role) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> Graph::find_edge(std::string_view var,
                                            std::string_view role,
                                            std::size_t occurrence) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].source == var && edges_[i].role == role) {
      if (occurrence == 0) return i;
      --occurrence;
    }
  }
  return std::nullopt;
}

std::size_t Graph::in_degree(std::string_view var) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) {
        return e.targets_var() && e.var() == var;
      }));
}

void Graph::add_node(const std::string& var, const std::string& concept_label) {
  if (!concepts_.emplace(var, concept_label).second) {
    throw GraphError(GraphError::Kind::kDuplicateVariable,
                     "variable already bound: " + var);
  }
  if (root_.empty()) root_ = var;
}

void Graph::set_concept(const std::string& var,
                        const std::string& concept_label) {
  auto it = concepts_.find(var);
  if (it == concepts_.end()) {
    throw GraphError(GraphError::Kind::kUnknownVariable,
                     "unknown variable: " + var);
  }
  it->second = concept_label;
}

void Graph::set_root(const std::string& var) {
  if (!has_var(var)) {
    throw GraphError(GraphError::Kind::kUnknownVariable,
                     "unknown variable: " + var);
  }
  root_ = var;
}

std::size_t Graph::add_edge(Edge edge) {
  edges_.push_back(std::move(edge));
  return edges_.size() - 1;
}

void Graph::insert_edge(std::size_t pos, Edge edge) {
  edges_.insert(edges_.begin() + static_cast<std::ptrdiff_t>(
                                     std::min(pos, edges_.size())),
                std::move(edge));
}

void Graph::set_edge_role(std::size_t index, std::string role) {
  edges_.at(index).role = std::move(role);
}

void Graph::set_edge_target(std::size_t index, Target target) {
  edges_.at(index).target = std::move(target);
}

void Graph::erase_edge(std::size_t index) {
  edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(index));
}

void Graph::erase_edges(std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end(), std::greater<>());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  for (std::size_t i : indices) erase_edge(i);
}

void Graph::rename_var(const std::string& from, const std::string& to) {
  if (from == to) return;
  auto node = concepts_.extract(from);
  if (node.empty()) {
    throw GraphError(GraphError::Kind::kUnknownVariable,
                     "unknown variable: " + from);
  }
  if (concepts_.count(to) != 0) {
    throw GraphError(GraphError::Kind::kDuplicateVariable,
                     "variable already bound: " + to);
  }
  node.key() = to;
  concepts_.insert(std::move(node));
  if (root_ == from) root_ = to;
  for (Edge& e : edges_) {
    if (e.source == from) e.source = to;
    if (e.targets_var() && e.var() == from) e.target = VarRef{to};
  }
}

std::vector<std::string> Graph::reachable_from(std::string_view start) const {
  std::vector<std::string> order;
  if (!has_var(start)) return order;
  std::unordered_map<std::string, std::vector<std::size_t>> adjacency;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    adjacency[edges_[i].source].push_back(i);
  }
  std::unordered_set<std::string> seen;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    if (!seen.insert(v).second) return;
    order.push_back(v);
    auto it = adjacency.find(v);
    if (it == adjacency.end()) return;
    for (std::size_t i : it->second) {
      if (edges_[i].targets_var()) visit(edges_[i].var());
    }
  };
  visit(std::string(start));
  return order;
}

void Graph::prune_unreachable() {
  auto live_list = reachable_from(root_);
  std::unordered_set<std::string> live(live_list.begin(), live_list.end());
  std::erase_if(concepts_, [&](const auto& kv) { return !live.count(kv.first); });
  std::erase_if(edges_, [&](const Edge& e) { return !live.count(e.source); });
}

void Graph::validate() const {
  if (root_.empty() || !has_var(root_)) {
    throw GraphError(GraphError::Kind::kUnknownVariable, "graph has no root");
  }
  for (const Edge& e : edges_) {
    if (!has_var(e.source)) {
      throw GraphError(GraphError::Kind::kUnknownVariable,
                       "edge source is unbound: " + e.source);
    }
    if (e.targets_var() && !has_var(e.var())) {
      throw GraphError(GraphError::Kind::kUnknownVariable,
                       "edge target is unbound: " + e.var());
    }
  }
  if (reachable_from(root_).size() != concepts_.size()) {
    throw GraphError(GraphError::Kind::kUnreachableNode,
                     "graph has nodes unreachable from the root");
  }
}

std::string Graph::fresh_var(std::string_view prefix) const {
  std::string base(prefix.empty() ? "x" : prefix);
  if (!has_var(base)) return base;
  for (int k = 2;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (!has_var(candidate)) return candidate;
  }
}

std::string Graph::fresh_suffixed(std::string_view base) const {
  for (int k = 1;; ++k) {
    std::string candidate = std::string(base) + "_" + std::to_string(k);
    if (!has_var(candidate)) return candidate;
  }
}

std::string concept_lemma(std::string_view concept_label) {
  if (is_frame(concept_label)) {
    return std::string(concept_label.substr(0, concept_label.rfind('-')));
  }
  return std::string(concept_label);
}

bool is_frame(std::string_view concept_label) {
  auto dash = concept_label.rfind('-');
  if (dash == std::string_view::npos || dash == 0 ||
      dash + 1 == concept_label.size()) {
    return false;
  }
  auto suffix = concept_label.substr(dash + 1);
  return std::all_of(suffix.begin(), suffix.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

Graph extract_subgraph(const Graph& graph, std::string_view var) {
  Graph out(std::string(var), graph.concept_of(var));
  auto vars = graph.reachable_from(var);
  std::unordered_set<std::string> keep(vars.begin(), vars.end());
  for (const auto& v : vars) {
    if (v != var) out.add_node(v, graph.concept_of(v));
  }
  for (const Edge& e : graph.edges()) {
    if (keep.count(e.source)) out.add_edge(e);
  }
  return out;
}

namespace {

// Backtracking matcher. Each pending group asks for a bijection between two
// equally sized lists of variables that hang off the same role of already
// matched nodes.
class Matcher {
 public:
  Matcher(const Graph& a, const Graph& b) : a_(a), b_(b) {}

  bool run() {
    if (a_.node_count() != b_.node_count() ||
        a_.edges().size() != b_.edges().size()) {
      return false;
    }
    State s;
    s.groups.push_back({{a_.root()}, {b_.root()}});
    return search(std::move(s));
  }

 private:
  struct Group {
    std::vector<std::string> lhs;
    std::vector<std::string> rhs;
  };
  struct State {
    std::map<std::string, std::string> fwd;
    std::map<std::string, std::string> bwd;
    std::vector<Group> groups;
  };

  bool search(State s) {
    while (!s.groups.empty() && s.groups.back().lhs.empty()) {
      s.groups.pop_back();
    }
    if (s.groups.empty()) return s.fwd.size() == a_.node_count();
    Group& g = s.groups.back();
    std::string u = g.lhs.back();
    for (std::size_t i = 0; i < g.rhs.size(); ++i) {
      State next = s;
      Group& ng = next.groups.back();
      std::string v = ng.rhs[i];
      ng.lhs.pop_back();
      ng.rhs.erase(ng.rhs.begin() + static_cast<std::ptrdiff_t>(i));
      if (!assign(next, u, v)) continue;
      if (search(std::move(next))) return true;
    }
    return false;
  }

  bool assign(State& s, const std::string& u, const std::string& v) {
    auto f = s.fwd.find(u);
    auto r = s.bwd.find(v);
    if (f != s.fwd.end() || r != s.bwd.end()) {
      return f != s.fwd.end() && r != s.bwd.end() && f->second == v &&
             r->second == u;
    }
    if (a_.concept_of(u) != b_.concept_of(v)) return false;
    s.fwd.emplace(u, v);
    s.bwd.emplace(v, u);

    std::map<std::string, std::vector<std::string>> lhs_vars, rhs_vars;
    std::vector<std::pair<std::string, Constant>> lhs_consts, rhs_consts;
    for (std::size_t i : a_.out_edges(u)) {
      const Edge& e = a_.edges()[i];
      if (e.targets_var()) {
        lhs_vars[e.role].push_back(e.var());
      } else {
        lhs_consts.emplace_back(e.role, e.constant());
      }
    }
    for (std::size_t i : b_.out_edges(v)) {
      const Edge& e = b_.edges()[i];
      if (e.targets_var()) {
        rhs_vars[e.role].push_back(e.var());
      } else {
        rhs_consts.emplace_back(e.role, e.constant());
      }
    }
    std::sort(lhs_consts.begin(), lhs_consts.end());
    std::sort(rhs_consts.begin(), rhs_consts.end());
    if (lhs_consts != rhs_consts) return false;
    if (lhs_vars.size() != rhs_vars.size()) return false;
    for (auto& [role, targets] : lhs_vars) {
      auto it = rhs_vars.find(role);
      if (it == rhs_vars.end() || it->second.size() != targets.size()) {
        return false;
      }
      s.groups.push_back({targets, it->second});
    }
    return true;
  }

  const Graph& a_;
  const Graph& b_;
};

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  return Matcher(a, b).run();
}

}  // namespace procqa::amr
