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

#ifndef REVERBKIT_BINS_HPP
#define REVERBKIT_BINS_HPP

#include <cstddef>
#include <vector>

#include "reverbkit/errors.hpp"

namespace reverbkit {

// Fixed-edge binning with left-closed right-open intervals [e_i, e_{i+1}).
// A value equal to an inner edge belongs to the bin starting at that edge;
// values below the first edge, at or above the last edge, or NaN fall
// outside every bin.
class BinSpec {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Throws BadEdges unless edges are strictly increasing with >= 2 entries.
  explicit BinSpec(std::vector<double> edges);

  std::size_t bin_count() const { return edges_.size() - 1; }
  const std::vector<double>& edges() const { return edges_; }
  double lower(std::size_t bin) const { return edges_[bin]; }
  double upper(std::size_t bin) const { return edges_[bin + 1]; }

  // Index of the interval containing v, or npos when outside.
  std::size_t index_of(double v) const;

 private:
  std::vector<double> edges_;
};

}  // namespace reverbkit

#endif  // REVERBKIT_BINS_HPP
