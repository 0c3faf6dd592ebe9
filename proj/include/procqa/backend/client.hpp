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

#ifndef PROCQA_BACKEND_CLIENT_HPP_
#define PROCQA_BACKEND_CLIENT_HPP_

#include <nlohmann/json_fwd.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Boundary to the neural text services (parser, realizer, paraphraser and
// LLM completions) behind the HTTP wire protocol.
namespace procqa::backend {

class BackendError : public std::runtime_error {
 public:
  enum class Kind { kTimeout, kTransport, kModelError, kProtocolViolation };
  BackendError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(BackendError::Kind kind);

struct Health {
  std::string status;
  std::vector<std::string> models;
};

// All operations are safe to call concurrently and either return a value or
// throw BackendError.
class BackendClient {
 public:
  virtual ~BackendClient() = default;

  // Sentence -> PENMAN.
  virtual std::string to_amr(std::string_view text) const = 0;
  // PENMAN -> sentence.
  virtual std::string to_text(std::string_view penman) const = 0;
  virtual std::vector<std::string> paraphrase(std::string_view text, int n) const = 0;
  virtual std::vector<std::string> questions_for_answer(std::string_view context,
                                                        std::string_view answer, int n) const = 0;
  virtual std::string answer_question(std::string_view context,
                                      std::string_view question) const = 0;
  virtual Health health() const = 0;
  // Recorded in augmentation audits, e.g. "http://127.0.0.1:8765".
  virtual std::string identity() const = 0;
};

struct BackendConfig {
  // Base URL, http only: "http://127.0.0.1:8765" or with a path prefix.
  std::string endpoint;
  int timeout_ms = 30000;
  int max_retries = 2;
  // Delay before the first retry; doubles on each further attempt.
  int backoff_ms = 100;
  int max_in_flight = 4;
  // Name of the environment variable holding a bearer token, if any.
  std::string api_key_env;

  // Throws std::invalid_argument.
  void check() const;
};

// Missing keys keep their defaults. Throws std::invalid_argument.
BackendConfig backend_config_from_json(const nlohmann::json& j);

// Client for the wire protocol. Retries timeouts, transport failures, 429 and
// 5xx responses with exponential backoff; 422 surfaces as kModelError and
// malformed responses as kProtocolViolation without retry. Never has more
// than max_in_flight requests outstanding.
std::unique_ptr<BackendClient> http_client(const BackendConfig& config);

}  // namespace procqa::backend

#endif  // PROCQA_BACKEND_CLIENT_HPP_
