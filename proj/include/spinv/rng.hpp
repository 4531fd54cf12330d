// Copyright 2026 the spinv authors
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

#ifndef SPINV_RNG_HPP
#define SPINV_RNG_HPP

#include <cstdint>

namespace spinv {

// SplitMix64: a 64-bit shift/xor-multiply generator. Small, fast, and
// trivially splittable into independent sub-streams, which keeps benchmark
// instances reproducible across platforms and thread counts.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Derive the seed of an independent sub-stream tagged by (a, b, c).
  // Feeding the tags through the output function decorrelates streams whose
  // tags differ in a single component.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
    SplitMix64 g(seed);
    std::uint64_t s = g.next() ^ (a * 0x9e3779b97f4a7c15ULL);
    SplitMix64 h(s);
    s = h.next() ^ (b * 0xbf58476d1ce4e5b9ULL);
    SplitMix64 k(s);
    return k.next() ^ (c * 0x94d049bb133111ebULL);
  }

 private:
  std::uint64_t state_;
};

}  // namespace spinv

#endif  // SPINV_RNG_HPP
