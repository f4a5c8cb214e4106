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

#ifndef REVERBKIT_ERRORS_HPP
#define REVERBKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace reverbkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Audio containers and WAV I/O.
struct MalformedHeader : Error { using Error::Error; };
struct UnsupportedEncoding : Error { using Error::Error; };
struct ChannelCountMismatch : Error { using Error::Error; };
struct OutOfRangeSample : Error { using Error::Error; };
struct IoFailure : Error { using Error::Error; };
struct EmptyBuffer : Error { using Error::Error; };

// Acoustic measurements.
struct ZeroEnergy : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };

// Corpus construction.
struct RateMismatch : Error { using Error::Error; };
struct ZeroSignal : Error { using Error::Error; };
struct EmptyPool : Error { using Error::Error; };
struct DuplicateId : Error { using Error::Error; };

// Metadata tables and splits.
struct SchemaMismatch : Error { using Error::Error; };
struct DuplicateKey : Error { using Error::Error; };
struct TooFewSpeakers : Error { using Error::Error; };
struct EmptyTable : Error { using Error::Error; };
struct BadEdges : Error { using Error::Error; };

// Scoring and statistics.
struct EmptyReference : Error { using Error::Error; };
struct EmptySet : Error { using Error::Error; };
struct UnpairedUtterance : Error { using Error::Error; };

}  // namespace reverbkit

#endif  // REVERBKIT_ERRORS_HPP
