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

#include "procqa/amr/penman.hpp"

#include <cctype>
#include <optional>
#include <regex>
#include <unordered_set>

namespace procqa::amr {

PenmanError::PenmanError(Kind kind, std::size_t offset,
                         const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " at byte " +
                         std::to_string(offset) + ": " + message),
      kind_(kind),
      offset_(offset) {}

const char* to_string(PenmanError::Kind kind) {
  switch (kind) {
    case PenmanError::Kind::kEmptyInput:
      return "EmptyInput";
    case PenmanError::Kind::kUnbalancedParens:
      return "UnbalancedParens";
    case PenmanError::Kind::kDuplicateVariableDefinition:
      return "DuplicateVariableDefinition";
    case PenmanError::Kind::kDanglingVariableReference:
      return "DanglingVariableReference";
    case PenmanError::Kind::kSyntax:
      return "Syntax";
  }
  return "Unknown";
}

namespace {

// Bare symbols shaped like AMR variables ("y", "c2", "ii", "s_1"). An undefined
// symbol of this shape is reported as dangling instead of read as a constant.
bool looks_like_variable(std::string_view symbol) {
  static const std::regex kVar("[a-z]{1,2}[0-9]*(_[0-9]+)?");
  return std::regex_match(symbol.begin(), symbol.end(), kVar);
}

class Parser {
 public:
  Parser(std::string_view text, std::vector<std::string>* warnings)
      : text_(text), warnings_(warnings) {}

  Graph parse() {
    skip_space();
    if (pos_ == text_.size()) {
      throw PenmanError(PenmanError::Kind::kEmptyInput, pos_,
                        "no PENMAN expression");
    }
    if (text_[pos_] != '(') {
      throw PenmanError(PenmanError::Kind::kSyntax, pos_,
                        "expected '(' to open the root node");
    }
    parse_node();
    skip_space();
    if (pos_ != text_.size()) {
      throw PenmanError(text_[pos_] == ')'
                            ? PenmanError::Kind::kUnbalancedParens
                            : PenmanError::Kind::kSyntax,
                        pos_, "trailing input after the root node");
    }
    resolve_references();
    return std::move(graph_);
  }

 private:
  struct PendingSymbol {
    std::size_t edge;
    std::size_t offset;
  };

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void unexpected_end() {
    throw PenmanError(PenmanError::Kind::kUnbalancedParens, pos_,
                      "input ended before all nodes were closed");
  }

  static bool symbol_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' &&
           c != ')' && c != '"';
  }

  std::string read_symbol() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && symbol_char(text_[pos_])) ++pos_;
    std::string symbol(text_.substr(start, pos_ - start));
    if (auto tilde = symbol.find('~'); tilde != std::string::npos) {
      if (warnings_ != nullptr) {
        warnings_->push_back("stripped alignment '" + symbol.substr(tilde) +
                             "' at byte " + std::to_string(start + tilde));
      }
      symbol.erase(tilde);
    }
    return symbol;
  }

  std::string read_quoted() {
    std::size_t start = pos_;
    ++pos_;
    std::string value;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      value.push_back(text_[pos_++]);
    }
    if (pos_ == text_.size()) {
      throw PenmanError(PenmanError::Kind::kSyntax, start,
                        "unterminated string literal");
    }
    ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '~') read_symbol();
    return value;
  }

  // Called with pos_ at '('. Returns the node's variable.
  std::string parse_node() {
    ++pos_;
    skip_space();
    if (pos_ == text_.size()) unexpected_end();
    std::size_t var_offset = pos_;
    std::string var = read_symbol();
    if (var.empty()) {
      throw PenmanError(PenmanError::Kind::kSyntax, var_offset,
                        "expected a variable");
    }
    skip_space();
    if (pos_ == text_.size()) unexpected_end();
    if (text_[pos_] != '/') {
      throw PenmanError(PenmanError::Kind::kSyntax, pos_,
                        "expected '/' after variable '" + var + "'");
    }
    ++pos_;
    skip_space();
    if (pos_ == text_.size()) unexpected_end();
    std::size_t concept_offset = pos_;
    std::string concept_label = text_[pos_] == '"' ? read_quoted() : read_symbol();
    if (concept_label.empty()) {
      throw PenmanError(PenmanError::Kind::kSyntax, concept_offset,
                        "expected a concept for '" + var + "'");
    }
    if (graph_.has_var(var)) {
      throw PenmanError(PenmanError::Kind::kDuplicateVariableDefinition,
                        var_offset, "variable '" + var + "' defined twice");
    }
    graph_.add_node(var, concept_label);

    while (true) {
      skip_space();
      if (pos_ == text_.size()) unexpected_end();
      char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        return var;
      }
      if (c != ':') {
        throw PenmanError(PenmanError::Kind::kSyntax, pos_,
                          "expected a role or ')'");
      }
      std::size_t role_offset = pos_;
      std::string role = read_symbol();
      if (!RoleLabel::valid(role)) {
        throw PenmanError(PenmanError::Kind::kSyntax, role_offset,
                          "malformed role '" + role + "'");
      }
      skip_space();
      if (pos_ == text_.size()) unexpected_end();
      c = text_[pos_];
      if (c == '(') {
        std::size_t edge = graph_.add_edge({var, role, VarRef{}});
        std::string child = parse_node();
        graph_.set_edge_target(edge, VarRef{child});
      } else if (c == '"') {
        graph_.add_edge({var, role, Constant{read_quoted(), true}});
      } else if (c == ')') {
        throw PenmanError(PenmanError::Kind::kSyntax, pos_,
                          "role '" + role + "' has no target");
      } else {
        std::size_t offset = pos_;
        std::string symbol = read_symbol();
        std::size_t edge =
            graph_.add_edge({var, role, Constant{symbol, false}});
        pending_.push_back({edge, offset});
      }
    }
  }

  void resolve_references() {
    for (const PendingSymbol& p : pending_) {
      const std::string& symbol = graph_.edges()[p.edge].constant().value;
      if (graph_.has_var(symbol)) {
        graph_.set_edge_target(p.edge, VarRef{symbol});
      } else if (looks_like_variable(symbol)) {
        throw PenmanError(PenmanError::Kind::kDanglingVariableReference,
                          p.offset, "variable '" + symbol + "' is never defined");
      }
    }
  }

  std::string_view text_;
  std::vector<std::string>* warnings_;
  std::size_t pos_ = 0;
  Graph graph_;
  std::vector<PendingSymbol> pending_;
};

void write_constant(const Constant& c, std::string& out) {
  if (!c.quoted) {
    out += c.value;
    return;
  }
  out.push_back('"');
  for (char ch : c.value) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  out.push_back('"');
}

class Writer {
 public:
  Writer(const Graph& graph, const SerializeOptions& options)
      : graph_(graph), options_(options) {
    for (std::size_t i = 0; i < graph.edges().size(); ++i) {
      by_source_[graph.edges()[i].source].push_back(i);
    }
  }

  std::string run() {
    write_node(graph_.root(), 0);
    if (expanded_.size() != graph_.node_count()) {
      throw GraphError(GraphError::Kind::kUnreachableNode,
                       "graph has nodes unreachable from the root");
    }
    return std::move(out_);
  }

 private:
  void write_node(const std::string& var, int depth) {
    expanded_.insert(var);
    out_ += "(" + var + " / ";
    const std::string& concept_label = graph_.concept_of(var);
    bool needs_quotes = concept_label.find_first_of(" ()\"") != std::string::npos;
    if (needs_quotes) {
      write_constant({concept_label, true}, out_);
    } else {
      out_ += concept_label;
    }
    auto it = by_source_.find(var);
    if (it != by_source_.end()) {
      for (std::size_t i : it->second) {
        const Edge& e = graph_.edges()[i];
        if (options_.indent) {
          out_ += "\n" + std::string(
                             static_cast<std::size_t>((depth + 1) *
                                                      options_.indent_width),
                             ' ');
        } else {
          out_ += " ";
        }
        out_ += e.role + " ";
        if (!e.targets_var()) {
          write_constant(e.constant(), out_);
        } else if (expanded_.count(e.var()) != 0) {
          out_ += e.var();
        } else {
          write_node(e.var(), depth + 1);
        }
      }
    }
    out_ += ")";
  }

  const Graph& graph_;
  SerializeOptions options_;
  std::map<std::string, std::vector<std::size_t>> by_source_;
  std::unordered_set<std::string> expanded_;
  std::string out_;
};

}  // namespace

Graph parse_penman(std::string_view text, std::vector<std::string>* warnings) {
  return Parser(text, warnings).parse();
}

std::string serialize_penman(const Graph& graph,
                             const SerializeOptions& options) {
  if (graph.empty()) {
    throw GraphError(GraphError::Kind::kUnknownVariable, "graph has no root");
  }
  return Writer(graph, options).run();
}

std::string PenmanBlock::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return {};
}

std::vector<PenmanBlock> read_penman_blocks(std::istream& in) {
  std::vector<PenmanBlock> blocks;
  std::optional<PenmanBlock> current;
  std::string line;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (current && !current->text.empty()) blocks.push_back(std::move(*current));
    current.reset();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) {
      flush();
      continue;
    }
    if (!current) {
      current.emplace();
      current->line = line_no;
    }
    if (line[first] == '#') {
      // "# ::key value ::key2 value2"
      std::string_view rest(line);
      rest.remove_prefix(first + 1);
      std::size_t at = rest.find("::");
      while (at != std::string_view::npos) {
        std::size_t next = rest.find(" ::", at + 2);
        std::string_view field =
            rest.substr(at + 2, next == std::string_view::npos
                                    ? std::string_view::npos
                                    : next - at - 2);
        auto space = field.find(' ');
        std::string key(field.substr(0, space));
        std::string value;
        if (space != std::string_view::npos) {
          value = std::string(field.substr(space + 1));
          while (!value.empty() && std::isspace(static_cast<unsigned char>(
                                       value.back()))) {
            value.pop_back();
          }
        }
        current->metadata.emplace_back(std::move(key), std::move(value));
        at = next == std::string_view::npos ? next : next + 1;
      }
      continue;
    }
    if (!current->text.empty()) current->text.push_back('\n');
    current->text += line;
  }
  flush();
  return blocks;
}

}  // namespace procqa::amr
