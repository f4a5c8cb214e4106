// Copyright 2026 The reverbkit Authors
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

#ifndef REVERBKIT_RNG_HPP
#define REVERBKIT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace reverbkit {

// 64-bit FNV-1a over a byte string. Used to derive per-key seeds from ids so
// that sampling decisions depend on the key, not on enumeration order.
constexpr uint64_t fnv1a_64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Combines a base seed with a stream key (a hash or an index).
constexpr uint64_t derive_seed(uint64_t base, uint64_t key) {
  return splitmix64(splitmix64(base) ^ key);
}

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the draw helpers below avoid
// std::uniform_*_distribution and std::normal_distribution because their
// results differ between standard library implementations.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // Unbiased integer in [0, n), n > 0. Classic rejection sampling.
  uint64_t bounded(uint64_t n) {
    const uint64_t min = (0 - n) % n;  // 2^64 mod n
    uint64_t x;
    do {
      x = eng_();
    } while (x < min);
    return x % n;
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace reverbkit

#endif  // REVERBKIT_RNG_HPP
