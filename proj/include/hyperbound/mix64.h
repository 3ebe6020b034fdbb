//
// Copyright 2026 The Hyperbound Authors
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
//

#ifndef HYPERBOUND_MIX64_H_
#define HYPERBOUND_MIX64_H_

#include <cstdint>

namespace hyperbound {

// Seeded 64-bit mixer. The constants are part of the on-disk contract: every
// ordering and every generated instance depends on them bit for bit.
//
//   x = seed ^ (id * 0x9E3779B97F4A7C15)
//   x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9
//   x = (x ^ (x >> 27)) * 0x94D049BB133111EB
//   return x ^ (x >> 31)
constexpr std::uint64_t Mix64(std::uint64_t seed, std::uint64_t id) {
  std::uint64_t x = seed ^ (id * 0x9E3779B97F4A7C15ULL);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-mode stream over Mix64: the i-th draw is Mix64(seed, i).
class Mix64Stream {
 public:
  explicit Mix64Stream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t Next() { return Mix64(seed_, counter_++); }

  // Uniform integer in [0, bound) by 128-bit multiply-high. bound > 0.
  std::uint64_t NextBelow(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(Next()) * bound) >> 64);
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double NextUnit() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace hyperbound

#endif  // HYPERBOUND_MIX64_H_
