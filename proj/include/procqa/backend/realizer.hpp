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

#ifndef PROCQA_BACKEND_REALIZER_HPP_
#define PROCQA_BACKEND_REALIZER_HPP_

#include <stdexcept>
#include <string>

#include "procqa/backend/client.hpp"
#include "procqa/qgen/candidate.hpp"

namespace procqa::backend {

class RealizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rule-based surface text used when no backend is configured. Role questions
// pick the wh-word from the role of the edge into amr-unknown; temporal
// questions fill their template surface with the slot texts.
std::string fallback_question(const qgen::QaCandidate& candidate);
// answer_text when set, else answer_hint, else a linearized answer_amr.
std::string fallback_answer(const qgen::QaCandidate& candidate);

// Fills question_text and answer_text offline and marks fallback_realized.
void realize_offline(qgen::QaCandidate& candidate);
// Fills both texts through the backend realizer. Existing answer_text is
// kept. Throws BackendError.
void realize_with(qgen::QaCandidate& candidate, const BackendClient& client);

}  // namespace procqa::backend

#endif  // PROCQA_BACKEND_REALIZER_HPP_
