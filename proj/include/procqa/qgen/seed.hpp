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

#ifndef PROCQA_QGEN_SEED_HPP_
#define PROCQA_QGEN_SEED_HPP_

#include <cstdint>
#include <string_view>

namespace procqa::qgen {

// Mixes a run seed with a recipe id and sentence index (FNV-1a over the bytes)
// so that each sentence draws from its own stream regardless of the order in
// which sentences are processed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view key,
                                    std::uint64_t index) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  for (int i = 0; i < 8; ++i) mix((seed >> (8 * i)) & 0xff);
  for (char c : key) mix(static_cast<unsigned char>(c));
  mix(0xff);
  for (int i = 0; i < 8; ++i) mix((index >> (8 * i)) & 0xff);
  return h;
}

}  // namespace procqa::qgen

#endif  // PROCQA_QGEN_SEED_HPP_
