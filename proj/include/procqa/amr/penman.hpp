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

#ifndef PROCQA_AMR_PENMAN_HPP_
#define PROCQA_AMR_PENMAN_HPP_

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "procqa/amr/graph.hpp"

namespace procqa::amr {

class PenmanError : public std::runtime_error {
 public:
  enum class Kind {
    kEmptyInput,
    kUnbalancedParens,
    kDuplicateVariableDefinition,
    kDanglingVariableReference,
    kSyntax,
  };
  PenmanError(Kind kind, std::size_t offset, const std::string& message);

  Kind kind() const { return kind_; }
  // Byte offset into the parsed text.
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

const char* to_string(PenmanError::Kind kind);

// Parses one parenthesized PENMAN expression. Alignment markers (`~e.N`) are
// dropped; a note is appended to `warnings` when one is given.
Graph parse_penman(std::string_view text,
                   std::vector<std::string>* warnings = nullptr);

struct SerializeOptions {
  // One edge per line with nested indentation; otherwise a single line.
  bool indent = true;
  int indent_width = 4;
};

// First mention of a variable expands the node, later mentions emit the bare
// variable. Throws GraphError(kUnreachableNode) for malformed graphs.
std::string serialize_penman(const Graph& graph,
                             const SerializeOptions& options = {});

// A block from a PENMAN file together with its `# ::key value` metadata.
struct PenmanBlock {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::string text;
  std::size_t line = 0;  // 1-based line where the block starts

  // Value of the first `# ::key`, or empty.
  std::string meta(std::string_view key) const;
};

// Splits a file into blank-line-separated blocks.
std::vector<PenmanBlock> read_penman_blocks(std::istream& in);

}  // namespace procqa::amr

#endif  // PROCQA_AMR_PENMAN_HPP_
