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

#include "reverbkit/bins.hpp"

#include <algorithm>
#include <cmath>

namespace reverbkit {

BinSpec::BinSpec(std::vector<double> edges) : edges_(std::move(edges)) {
  if (edges_.size() < 2) throw BadEdges("need at least two bin edges");
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (!(edges_[i - 1] < edges_[i])) {
      throw BadEdges("bin edges must be strictly increasing");
    }
  }
}

std::size_t BinSpec::index_of(double v) const {
  if (std::isnan(v)) return npos;
  if (v < edges_.front() || v >= edges_.back()) return npos;
  // First edge strictly greater than v; v belongs to the bin before it.
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), v);
  return static_cast<std::size_t>(it - edges_.begin()) - 1;
}

}  // namespace reverbkit
