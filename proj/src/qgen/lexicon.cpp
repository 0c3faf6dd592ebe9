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

#include "procqa/qgen/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace procqa::qgen {

void RuleLexicons::check() const {
  if (directional_verbs.empty() || directional_prepositions.empty() ||
      instrument_concepts.empty()) {
    throw LexiconError(LexiconError::Kind::kEmpty, "rule lexicons must be non-empty");
  }
}

std::set<std::string> load_term_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw LexiconError(LexiconError::Kind::kIo, "cannot read " + path.string());
  }
  std::set<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(), std::find_if(line.begin(), line.end(), not_space));
    line.erase(std::find_if(line.rbegin(), line.rend(), not_space).base(), line.end());
    if (line.empty()) continue;
    std::transform(line.begin(), line.end(), line.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    terms.insert(line);
  }
  return terms;
}

RuleLexicons load_lexicons(const std::filesystem::path& dir) {
  RuleLexicons lex{load_term_list(dir / "directional_verbs.txt"),
                   load_term_list(dir / "directional_prepositions.txt"),
                   load_term_list(dir / "instrument_concepts.txt")};
  lex.check();
  return lex;
}

}  // namespace procqa::qgen
