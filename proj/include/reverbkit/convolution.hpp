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

#ifndef REVERBKIT_CONVOLUTION_HPP
#define REVERBKIT_CONVOLUTION_HPP

#include "reverbkit/audio_buffer.hpp"

namespace reverbkit {

// Full linear convolution y[n] = sum_k x[k] h[n-k], output length
// x.size() + h.size() - 1. Small products use the direct sum; larger ones go
// through an FFT with double-precision accuracy well inside 1e-9 per sample
// of the direct definition. Output is identical across runs and worker
// counts for identical inputs.
//
// Throws RateMismatch when the sample rates differ, EmptyBuffer when either
// input is empty.
AudioBuffer convolve(const AudioBuffer& x, const AudioBuffer& h);

}  // namespace reverbkit

#endif  // REVERBKIT_CONVOLUTION_HPP
