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

// Independent reference implementations used only by tests. These stay
// deliberately naive (direct sums, recursion, streaming updates) so that
// they cannot share a bug with the production code paths they check.

#ifndef REVERBKIT_TESTS_ORACLES_HPP
#define REVERBKIT_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace oracles {

// O(NM) convolution straight from the defining sum.
inline std::vector<double> direct_convolve(const std::vector<double>& x,
                                           const std::vector<double>& h) {
  std::vector<double> y(x.size() + h.size() - 1, 0.0);
  for (std::size_t n = 0; n < y.size(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (n >= k && n - k < h.size()) acc += x[k] * h[n - k];
    }
    y[n] = acc;
  }
  return y;
}

// O(N^2) backward energy integration: every tail sum recomputed from
// scratch.
inline std::vector<double> edc_tail_sums(const std::vector<double>& h) {
  std::vector<double> tail(h.size(), 0.0);
  for (std::size_t t = 0; t < h.size(); ++t) {
    double acc = 0.0;
    for (std::size_t k = t; k < h.size(); ++k) acc += h[k] * h[k];
    tail[t] = acc;
  }
  return tail;
}

// Memoized recursive edit distance; a different algorithm shape from the
// iterative two-row table in production.
inline uint32_t edit_distance_recursive(
    const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::map<std::pair<std::size_t, std::size_t>, uint32_t> memo;
  const std::function<uint32_t(std::size_t, std::size_t)> go =
      [&](std::size_t i, std::size_t j) -> uint32_t {
    if (i == a.size()) return static_cast<uint32_t>(b.size() - j);
    if (j == b.size()) return static_cast<uint32_t>(a.size() - i);
    const auto key = std::make_pair(i, j);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    uint32_t best;
    if (a[i] == b[j]) {
      best = go(i + 1, j + 1);
    } else {
      best = 1 + std::min({go(i + 1, j + 1), go(i + 1, j), go(i, j + 1)});
    }
    memo[key] = best;
    return best;
  };
  return go(0, 0);
}

// Streaming (Welford) moments, used against the batch statistics.
struct Welford {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double population_std() const {
    return n == 0 ? 0.0 : std::sqrt(m2 / static_cast<double>(n));
  }
};

// Scratch directory that cleans up after itself.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    const auto base = std::filesystem::temp_directory_path();
    for (int i = 0;; ++i) {
      path_ = base / (tag + "-" + std::to_string(::getpid()) + "-" +
                      std::to_string(i));
      if (std::filesystem::create_directory(path_)) break;
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace oracles

#endif  // REVERBKIT_TESTS_ORACLES_HPP
