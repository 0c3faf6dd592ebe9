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

#include <httplib.h>

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <semaphore>
#include <thread>

#include "procqa/backend/client.hpp"

namespace procqa::backend {
namespace {

using json = nlohmann::json;
using Kind = BackendError::Kind;
using Clock = std::chrono::steady_clock;

// Splits "http://host:port/prefix" into "http://host:port" and "/prefix".
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  auto scheme = endpoint.find("://");
  auto slash = endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (slash == std::string::npos) return {endpoint, ""};
  std::string prefix = endpoint.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {endpoint.substr(0, slash), prefix};
}

class HttpClient : public BackendClient {
 public:
  explicit HttpClient(BackendConfig config)
      : config_(std::move(config)), slots_(config_.max_in_flight) {
    std::tie(base_, prefix_) = split_endpoint(config_.endpoint);
    if (!config_.api_key_env.empty()) {
      if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
    }
  }

  std::string to_amr(std::string_view text) const override {
    return string_field(post("/v1/parse", {{"text", text}}), "penman");
  }

  std::string to_text(std::string_view penman) const override {
    return string_field(post("/v1/generate", {{"penman", penman}}), "text");
  }

  std::vector<std::string> paraphrase(std::string_view text, int n) const override {
    if (n <= 0) return {};
    return string_list(post("/v1/paraphrase", {{"text", text}, {"n", n}}), "texts");
  }

  std::vector<std::string> questions_for_answer(std::string_view context, std::string_view answer,
                                                int n) const override {
    if (n <= 0) return {};
    return string_list(
        post("/v1/qg_from_answer", {{"context", context}, {"answer", answer}, {"n", n}}),
        "questions");
  }

  std::string answer_question(std::string_view context, std::string_view question) const override {
    return string_field(post("/v1/answer", {{"context", context}, {"question", question}}),
                        "answer");
  }

  Health health() const override {
    json body = request("GET", "/v1/health", nullptr);
    Health h;
    h.status = string_field(body, "status");
    if (auto it = body.find("models"); it != body.end()) {
      if (!it->is_array()) violation("/v1/health: 'models' must be a list");
      for (const auto& m : *it) {
        if (!m.is_string()) violation("/v1/health: model names must be strings");
        h.models.push_back(m.get<std::string>());
      }
    }
    return h;
  }

  std::string identity() const override { return config_.endpoint; }

 private:
  [[noreturn]] static void violation(const std::string& what) {
    throw BackendError(Kind::kProtocolViolation, what);
  }

  static std::string string_field(const json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_string()) {
      violation(std::string("response lacks string field '") + key + "'");
    }
    return it->get<std::string>();
  }

  static std::vector<std::string> string_list(const json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_array()) {
      violation(std::string("response lacks list field '") + key + "'");
    }
    std::vector<std::string> out;
    for (const auto& v : *it) {
      if (!v.is_string()) violation(std::string("'") + key + "' must hold strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  json post(const std::string& route, const json& body) const {
    return request("POST", route, &body);
  }

  json request(const std::string& method, const std::string& route, const json* body) const {
    for (int attempt = 0;; ++attempt) {
      try {
        return attempt_once(method, route, body);
      } catch (const BackendError& e) {
        bool retryable = e.kind() == Kind::kTimeout || e.kind() == Kind::kTransport;
        if (!retryable || attempt >= config_.max_retries) throw;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(config_.backoff_ms) * (1 << attempt));
    }
  }

  json attempt_once(const std::string& method, const std::string& route, const json* body) const {
    const std::string path = prefix_ + route;
    httplib::Result res;
    const auto start = Clock::now();
    {
      slots_.acquire();
      struct Release {
        std::counting_semaphore<>& s;
        ~Release() { s.release(); }
      } release{slots_};
      httplib::Client cli(base_);
      const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
      cli.set_connection_timeout(timeout);
      cli.set_read_timeout(timeout);
      cli.set_write_timeout(timeout);
      httplib::Headers headers;
      if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
      res = method == "GET" ? cli.Get(path, headers)
                            : cli.Post(path, headers, body->dump(), "application/json");
    }
    if (!res) {
      const auto elapsed =
          std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
      const bool timed_out = res.error() == httplib::Error::ConnectionTimeout ||
                             (res.error() == httplib::Error::Read &&
                              elapsed >= config_.timeout_ms * 9 / 10);
      throw BackendError(timed_out ? Kind::kTimeout : Kind::kTransport,
                         method + " " + path + ": " + httplib::to_string(res.error()));
    }
    const int status = res->status;
    // 429 is the shim's saturated-queue reply; retried like a server error.
    if (status >= 500 || status == 429) {
      throw BackendError(Kind::kTransport, method + " " + path + ": HTTP " + std::to_string(status));
    }
    json parsed = json::parse(res->body, nullptr, false);
    if (status == 422) {
      std::string msg = "model error";
      if (parsed.is_object() && parsed.contains("error") && parsed["error"].is_string()) {
        msg = parsed["error"].get<std::string>();
      }
      throw BackendError(Kind::kModelError, msg);
    }
    if (status != 200) violation(method + " " + path + ": unexpected HTTP " + std::to_string(status));
    if (parsed.is_discarded() || !parsed.is_object()) {
      violation(method + " " + path + ": response is not a JSON object");
    }
    return parsed;
  }

  BackendConfig config_;
  std::string base_;
  std::string prefix_;
  std::string api_key_;
  mutable std::counting_semaphore<> slots_;
};

}  // namespace

std::unique_ptr<BackendClient> http_client(const BackendConfig& config) {
  config.check();
  return std::make_unique<HttpClient>(config);
}

}  // namespace procqa::backend
