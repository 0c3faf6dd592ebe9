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

#ifndef PROCQA_AMR_GRAPH_HPP_
#define PROCQA_AMR_GRAPH_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace procqa::amr {

// Concept used to mark the questioned element of a graph.
inline constexpr std::string_view kUnknownConcept = "amr-unknown";

// A role label such as ":ARG1" or ":ARG1-of". Inverse forms are kept verbatim
// in the edge list; this type only normalizes them for comparison.
class RoleLabel {
 public:
  RoleLabel() = default;
  // Throws std::invalid_argument unless `label` matches :[A-Za-z0-9-]+.
  explicit RoleLabel(std::string_view label);

  // ":ARG1-of" -> ":ARG1" with inverse() == true.
  const std::string& base() const { return base_; }
  bool inverse() const { return inverse_; }
  std::string str() const { return inverse_ ? base_ + "-of" : base_; }

  static bool valid(std::string_view label);

  friend bool operator==(const RoleLabel&, const RoleLabel&) = default;
  friend auto operator<=>(const RoleLabel&, const RoleLabel&) = default;

 private:
  std::string base_;
  bool inverse_ = false;
};

// True for ":ARG0" .. ":ARG9" style core roles (not inverse).
bool is_core_role(std::string_view role);
// Numeric suffix of ":opN" or ":ARGN"; nullopt for other roles.
std::optional<int> role_index(std::string_view role);

struct Constant {
  std::string value;
  bool quoted = false;

  friend bool operator==(const Constant&, const Constant&) = default;
  friend auto operator<=>(const Constant&, const Constant&) = default;
};

struct VarRef {
  std::string name;

  friend bool operator==(const VarRef&, const VarRef&) = default;
  friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

using Target = std::variant<VarRef, Constant>;

// Edges are stored in the orientation they were written in, so the source of
// an inverse role is still the parent in the PENMAN tree.
struct Edge {
  std::string source;
  std::string role;
  Target target;

  bool targets_var() const { return std::holds_alternative<VarRef>(target); }
  const std::string& var() const { return std::get<VarRef>(target).name; }
  const Constant& constant() const { return std::get<Constant>(target); }

  friend bool operator==(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  enum class Kind {
    kUnknownVariable,
    kDuplicateVariable,
    kUnreachableNode,
  };
  GraphError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Rooted, labeled, possibly re-entrant graph. Plain value type: every editing
// function in edit.hpp takes a const reference and returns a new Graph.
class Graph {
 public:
  Graph() = default;
  Graph(std::string root, std::string root_concept);

  const std::string& root() const { return root_; }
  const std::map<std::string, std::string>& concepts() const {
    return concepts_;
  }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<std::string>& id() const { return id_; }
  void set_id(std::optional<std::string> id) { id_ = std::move(id); }

  bool empty() const { return root_.empty(); }
  std::size_t node_count() const { return concepts_.size(); }
  bool has_var(std::string_view var) const;
  const std::string& concept_of(std::string_view var) const;
  const std::string& root_concept() const { return concept_of(root_); }

  // Indices into edges(), in edge-list order.
  std::vector<std::size_t> out_edges(std::string_view var) const;
  std::vector<std::size_t> out_edges(std::string_view var,
                                     std::string_view role) const;
  // First outgoing edge of `var` carrying `role`.
  std::optional<std::size_t> find_edge(std::string_view var,
                                       std::string_view role,
                                       std::size_t occurrence = 0) const;
  // Number of edges whose target is `var`.
  std::size_t in_degree(std::string_view var) const;

  // Mutators. These keep the single-definition invariant; reachability is
  // restored with prune_unreachable() or checked with validate().
  void add_node(const std::string& var, const std::string& concept_label);
  void set_concept(const std::string& var, const std::string& concept_label);
  void set_root(const std::string& var);
  std::size_t add_edge(Edge edge);
  void insert_edge(std::size_t pos, Edge edge);
  void set_edge_role(std::size_t index, std::string role);
  void set_edge_target(std::size_t index, Target target);
  void erase_edge(std::size_t index);
  void erase_edges(std::vector<std::size_t> indices);
  // Renames a variable everywhere it appears.
  void rename_var(const std::string& from, const std::string& to);
  // Drops nodes (and their edges) no longer reachable from the root.
  void prune_unreachable();

  // Vars reachable from `start`, in depth-first first-visit order.
  std::vector<std::string> reachable_from(std::string_view start) const;
  // Throws GraphError if an invariant is violated.
  void validate() const;

  // Smallest unused name among prefix, prefix2, prefix3, ...
  std::string fresh_var(std::string_view prefix) const;
  // Smallest unused name among base_1, base_2, ...
  std::string fresh_suffixed(std::string_view base) const;

  // Exact equality: variable names are significant.
  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::string root_;
  std::map<std::string, std::string> concepts_;
  std::vector<Edge> edges_;
  std::optional<std::string> id_;
};

// Lemma of a concept: "cook-01" -> "cook", "amr-unknown" unchanged.
std::string concept_lemma(std::string_view concept_label);
// True when the concept carries a frame sense suffix such as "-01".
bool is_frame(std::string_view concept_label);

// Copies the subgraph reachable from `var` into a new graph rooted there.
Graph extract_subgraph(const Graph& graph, std::string_view var);

// Structural equality up to a consistent renaming of variables. Roles other
// than :opN are compared as multisets; :opN carry their list position.
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace procqa::amr

#endif  // PROCQA_AMR_GRAPH_HPP_
