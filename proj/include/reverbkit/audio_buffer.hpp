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

#ifndef REVERBKIT_AUDIO_BUFFER_HPP
#define REVERBKIT_AUDIO_BUFFER_HPP

#include <cstddef>
#include <vector>

#include "reverbkit/errors.hpp"

namespace reverbkit {

// Mono audio held as double precision amplitudes, nominally in [-1, 1].
// Buffers are immutable by convention once filled and safe to share between
// worker threads. Quantization happens only when a buffer is written to disk.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate_hz = 16000;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

// RMS level in dB re full scale 1.0. Returns -infinity for an all-zero
// buffer. Throws EmptyBuffer on an empty one.
double rms_db(const AudioBuffer& buffer);

// Largest absolute sample value. Throws EmptyBuffer on an empty buffer.
double peak_abs(const AudioBuffer& buffer);

// Copy with every sample multiplied by gain.
AudioBuffer apply_gain(const AudioBuffer& buffer, double gain);

}  // namespace reverbkit

#endif  // REVERBKIT_AUDIO_BUFFER_HPP
