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

#ifndef REVERBKIT_WAV_IO_HPP
#define REVERBKIT_WAV_IO_HPP

#include <filesystem>

#include "reverbkit/audio_buffer.hpp"

namespace reverbkit {

struct WavReadOptions {
  // Multi-channel input is rejected unless downmixing is requested, in which
  // case channels are averaged.
  bool downmix_to_mono = false;
};

// Reads a RIFF/WAVE file. Accepted encodings: 16-bit integer PCM and 32-bit
// IEEE float, any sample rate. Integer samples are mapped to real amplitudes
// by dividing by 32768.
//
// Throws MalformedHeader, UnsupportedEncoding, ChannelCountMismatch,
// IoFailure.
AudioBuffer read_wav(const std::filesystem::path& path,
                     const WavReadOptions& options = {});

// Writes mono 16-bit PCM at the buffer's sample rate. Samples are quantized
// by round(s * 32767) and clamped to [-32768, 32767]; the read/write scaling
// asymmetry (divide by 32768, multiply by 32767) is the common PCM
// convention and keeps the round-trip error within 1.5 quantization steps.
//
// Throws OutOfRangeSample if any |sample| > 1.0 (a missed clipping check
// upstream), IoFailure on filesystem errors. Nothing is written on error.
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path);

}  // namespace reverbkit

#endif  // REVERBKIT_WAV_IO_HPP
