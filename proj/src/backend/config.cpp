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

#include <nlohmann/json.hpp>

#include "procqa/backend/client.hpp"

namespace procqa::backend {

std::string_view to_string(BackendError::Kind kind) {
  switch (kind) {
    case BackendError::Kind::kTimeout: return "timeout";
    case BackendError::Kind::kTransport: return "transport";
    case BackendError::Kind::kModelError: return "model_error";
    case BackendError::Kind::kProtocolViolation: return "protocol_violation";
  }
  return "unknown";
}

void BackendConfig::check() const {
  if (endpoint.rfind("http://", 0) != 0 || endpoint.size() == 7) {
    throw std::invalid_argument("backend endpoint must be an http:// URL, got '" + endpoint + "'");
  }
  if (timeout_ms <= 0) throw std::invalid_argument("timeout_ms must be positive");
  if (max_retries < 0 || max_retries > 10) {
    throw std::invalid_argument("max_retries must be in [0, 10]");
  }
  if (backoff_ms < 0) throw std::invalid_argument("backoff_ms must not be negative");
  if (max_in_flight < 1) throw std::invalid_argument("max_in_flight must be at least 1");
}

BackendConfig backend_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("backend config must be a JSON object");
  BackendConfig c;
  try {
    c.endpoint = j.value("endpoint", c.endpoint);
    c.timeout_ms = j.value("timeout_ms", c.timeout_ms);
    c.max_retries = j.value("max_retries", c.max_retries);
    c.backoff_ms = j.value("backoff_ms", c.backoff_ms);
    c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
    c.api_key_env = j.value("api_key_env", c.api_key_env);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("backend config: ") + e.what());
  }
  c.check();
  return c;
}

}  // namespace procqa::backend
