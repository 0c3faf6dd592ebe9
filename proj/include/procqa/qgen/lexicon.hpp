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

#ifndef PROCQA_QGEN_LEXICON_HPP_
#define PROCQA_QGEN_LEXICON_HPP_

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>

namespace procqa::qgen {

class LexiconError : public std::runtime_error {
 public:
  enum class Kind { kIo, kEmpty };
  LexiconError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Word lists consulted by the :ARG1/:ARG2 rules.
struct RuleLexicons {
  std::set<std::string> directional_verbs;         // verb lemmas
  std::set<std::string> directional_prepositions;
  std::set<std::string> instrument_concepts;       // concept labels

  // Throws LexiconError(kEmpty) if any list is empty.
  void check() const;
};

// One term per line, lower-cased; blank lines and `#` comments skipped.
std::set<std::string> load_term_list(const std::filesystem::path& path);

// Reads directional_verbs.txt, directional_prepositions.txt and
// instrument_concepts.txt from `dir`.
RuleLexicons load_lexicons(const std::filesystem::path& dir);

}  // namespace procqa::qgen

#endif  // PROCQA_QGEN_LEXICON_HPP_
