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

#ifndef PROCQA_TESTS_SUPPORT_FIXTURES_HPP_
#define PROCQA_TESTS_SUPPORT_FIXTURES_HPP_

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include "procqa/amr/graph.hpp"
#include "procqa/amr/penman.hpp"

namespace procqa::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(PROCQA_FIXTURE_DIR) + "/" + name;
}

inline std::string data_path(const std::string& name) {
  return std::string(PROCQA_DATA_DIR) + "/" + name;
}

// Graphs from golden_graphs.penman keyed by their `# ::id`.
inline const std::map<std::string, std::string>& golden_texts() {
  static const std::map<std::string, std::string> texts = [] {
    std::ifstream in(fixture_path("golden_graphs.penman"));
    if (!in) throw std::runtime_error("missing golden_graphs.penman");
    std::map<std::string, std::string> out;
    for (auto& block : amr::read_penman_blocks(in)) {
      out.emplace(block.meta("id"), block.text);
    }
    return out;
  }();
  return texts;
}

inline amr::Graph golden_graph(const std::string& id) {
  return amr::parse_penman(golden_texts().at(id));
}

// Sentence graphs of a fixture recipe, keyed by the sentence index after the
// last '.' of `# ::id recipe.N`.
inline std::map<int, amr::Graph> corpus_amrs(const std::string& recipe) {
  std::ifstream in(fixture_path("corpus/amr/" + recipe + ".penman"));
  if (!in) throw std::runtime_error("missing sentence graphs for " + recipe);
  std::map<int, amr::Graph> out;
  for (auto& block : amr::read_penman_blocks(in)) {
    std::string id = block.meta("id");
    out.emplace(std::stoi(id.substr(id.rfind('.') + 1)), amr::parse_penman(block.text));
  }
  return out;
}

}  // namespace procqa::testing

#endif  // PROCQA_TESTS_SUPPORT_FIXTURES_HPP_
