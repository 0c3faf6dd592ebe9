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

#ifndef PROCQA_AMR_PHRASE_HPP_
#define PROCQA_AMR_PHRASE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "procqa/amr/graph.hpp"

namespace procqa::amr {

// Builds a small AMR for an ingredient-style noun phrase without a parser:
// "two chopped onions" -> (o / onion :quant 2 :ARG1-of (c / chop-01)).
// Determiners are dropped, the last word is the head.
Graph noun_phrase_graph(std::string_view phrase);

// Wraps several graphs under (a / and :op1 ... :opN). A single graph is
// returned unchanged.
Graph conjoin(const std::vector<Graph>& parts);

// Deterministic English-ish rendering of a graph using concept lemmas in
// graph order. amr-unknown nodes render as nothing.
std::string linearize(const Graph& graph);
std::string linearize_from(const Graph& graph, const std::string& var);

// Word-level helpers shared with the realizer.
std::string singularize(std::string_view noun);
std::string pluralize(std::string_view noun);
std::string past_participle(std::string_view verb);
std::string gerund(std::string_view verb);
// "chopped" -> "chop", "grated" -> "grate".
std::string participle_stem(std::string_view word);

}  // namespace procqa::amr

#endif  // PROCQA_AMR_PHRASE_HPP_
