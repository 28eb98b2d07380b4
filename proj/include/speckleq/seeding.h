// Copyright 2026 The speckleq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPECKLEQ_SEEDING_H
#define SPECKLEQ_SEEDING_H

#include <cstdint>
#include <initializer_list>

namespace speckleq {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Mixes a master seed with stream coordinates (setting index, bin index, purpose tag)
/// into an independent sub-seed. Order of the coordinates matters.
inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> coords) {
    uint64_t h = splitmix64(master);
    for (uint64_t c : coords) {
        h = splitmix64(h ^ splitmix64(c + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

// Purpose tags for derive_seed, so that streams for different uses never coincide.
namespace stream {
constexpr uint64_t kMatrix = 1;
constexpr uint64_t kPhase = 2;
constexpr uint64_t kDetector = 3;
constexpr uint64_t kBootstrap = 4;
}  // namespace stream

}  // namespace speckleq

#endif
