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

#include "reverbkit/audio_buffer.hpp"

#include <cmath>
#include <limits>

namespace reverbkit {

double rms_db(const AudioBuffer& buffer) {
  if (buffer.empty()) throw EmptyBuffer("rms_db: empty buffer");
  double sum_sq = 0.0;
  for (double s : buffer.samples) sum_sq += s * s;
  if (sum_sq == 0.0) return -std::numeric_limits<double>::infinity();
  const double rms = std::sqrt(sum_sq / static_cast<double>(buffer.size()));
  return 20.0 * std::log10(rms);
}

double peak_abs(const AudioBuffer& buffer) {
  if (buffer.empty()) throw EmptyBuffer("peak_abs: empty buffer");
  double peak = 0.0;
  for (double s : buffer.samples) {
    const double a = std::fabs(s);
    if (a > peak) peak = a;
  }
  return peak;
}

AudioBuffer apply_gain(const AudioBuffer& buffer, double gain) {
  AudioBuffer out;
  out.sample_rate_hz = buffer.sample_rate_hz;
  out.samples.reserve(buffer.size());
  for (double s : buffer.samples) out.samples.push_back(s * gain);
  return out;
}

}  // namespace reverbkit
