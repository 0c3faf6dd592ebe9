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

#ifndef PROCQA_AMR_EDIT_HPP_
#define PROCQA_AMR_EDIT_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "procqa/amr/graph.hpp"

namespace procqa::amr {

// One hop from a node: the `occurrence`-th outgoing edge (counted left to
// right in edge-list order) carrying `role`.
struct PathStep {
  std::string role;
  std::size_t occurrence = 0;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

// Steps from the root identifying a single edge. An empty path names no edge.
class GraphPath {
 public:
  GraphPath() = default;
  GraphPath(std::initializer_list<PathStep> steps) : steps_(steps) {}
  explicit GraphPath(std::vector<PathStep> steps) : steps_(std::move(steps)) {}

  // Convenience: {":ARG1", ":mod"} with occurrence 0 everywhere.
  static GraphPath of(std::initializer_list<const char*> roles);

  const std::vector<PathStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }
  GraphPath child(std::string role, std::size_t occurrence = 0) const;
  std::string str() const;

  friend bool operator==(const GraphPath&, const GraphPath&) = default;

 private:
  std::vector<PathStep> steps_;
};

class EditError : public std::runtime_error {
 public:
  enum class Kind { kPathNotFound, kPathTargetsConstant };
  EditError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Index of the edge `path` addresses; throws EditError(kPathNotFound).
std::size_t resolve_path(const Graph& graph, const GraphPath& path);
std::optional<std::size_t> try_resolve_path(const Graph& graph,
                                            const GraphPath& path);
// Path to the edge through which `var` is first reached in serialization
// order; nullopt for the root or unknown variables.
std::optional<GraphPath> path_to(const Graph& graph, const std::string& var);

struct QuestionAnswer {
  Graph question;
  Graph answer;
};

// Replaces the subgraph at `path` with a fresh amr-unknown node. Constants are
// replaceable except under :mode. A constant answer becomes a one-node graph
// whose concept is the constant's text.
QuestionAnswer replace_with_unknown(const Graph& graph, const GraphPath& path);

// Replaces the subgraph at `path` with `donor`. Donor variables that collide
// with the host are renamed to var_k with the smallest free k.
Graph graft_subgraph(const Graph& graph, const GraphPath& path,
                     const Graph& donor);

// Removes every root edge whose role is not in `keep`, then prunes nodes that
// are no longer reachable. Shared nodes referenced elsewhere survive.
Graph remove_roles(const Graph& graph, const std::set<std::string>& keep);
// Removes the given roles from the root.
Graph drop_roles(const Graph& graph, const std::set<std::string>& drop);

// Lower-level helpers used by the generators. All of them edit in place.
namespace inplace {

// Adds `role` -> (fresh / concept) under `source`; returns the new variable.
std::string add_child(Graph& graph, const std::string& source,
                      const std::string& role, const std::string& concept_label,
                      std::string_view var_prefix = "");
// Copies `donor` into `host` with collision renaming; returns the donor's root
// variable as named inside `host`. The donor stays disconnected until an edge
// is pointed at it.
std::string merge_disjoint(Graph& host, const Graph& donor);
// Removes every edge of `source` with `role` and prunes.
void remove_role(Graph& graph, const std::string& source,
                 const std::string& role);
// Renumbers :opN edges of `source` contiguously from 1 in list order.
void renumber_ops(Graph& graph, const std::string& source);

}  // namespace inplace

// Number of nodes whose concept is amr-unknown.
std::size_t count_unknowns(const Graph& graph);

}  // namespace procqa::amr

#endif  // PROCQA_AMR_EDIT_HPP_
