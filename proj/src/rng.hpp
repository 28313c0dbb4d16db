// Copyright 2026 The BBC Ledger Authors
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

#ifndef BBC_SRC_RNG_HPP
#define BBC_SRC_RNG_HPP

#include <cstdint>
#include <string_view>

namespace bbc {

// splitmix64. Standard-library distributions are implementation-defined, so
// every seeded draw in the project goes through this generator to keep runs
// bit-identical across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Unbiased-enough bounded draw (Lemire multiply-shift); exact given the
  /// same seed on every platform.
  uint64_t below(uint64_t bound) {
    if (bound == 0) return 0;
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    return static_cast<uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() & 1) != 0; }

 private:
  uint64_t state_;
};

inline uint64_t fnv1a64(std::string_view label) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : label) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Mixes two words through one splitmix round each; used to derive
/// independent substreams from (seed, label) or (seed, key_id) pairs so a
/// new random consumer never perturbs existing draws.
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  Rng a(seed);
  Rng b(salt);
  return a.next() ^ (b.next() + 0x9e3779b97f4a7c15ull);
}

inline Rng substream(uint64_t seed, std::string_view label) {
  return Rng(mix_seed(seed, fnv1a64(label)));
}

}  // namespace bbc

#endif  // BBC_SRC_RNG_HPP
