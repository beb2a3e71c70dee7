// Copyright 2026 The Covernet Authors.
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

#ifndef COVERNET_RNG_HPP_
#define COVERNET_RNG_HPP_

#include <cstdint>
#include <random>

namespace covernet {

using Rng = std::mt19937_64;

// Independent stream per (seed, stream, index) triple.
inline Rng make_rng(uint64_t seed, uint64_t stream = 0, uint64_t index = 0) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32),
                    static_cast<uint32_t>(index), static_cast<uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace covernet

#endif  // COVERNET_RNG_HPP_
