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

#ifndef REVERBKIT_CORPUS_BUILDER_HPP
#define REVERBKIT_CORPUS_BUILDER_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reverbkit/audio_buffer.hpp"
#include "reverbkit/metadata.hpp"

namespace reverbkit {

struct SnrRange {
  double lo_db = 10.0;
  double hi_db = 15.0;
};

struct BuildConfig {
  int variants_per_utterance = 10;
  uint64_t sampling_seed = 42;
  int output_rate_hz = 16000;
  // When set, every convolved file is gain-adjusted to this RMS level before
  // the optional noise stage.
  std::optional<double> normalize_target_rms_db;
  // When set, white noise is added at a per-file SNR drawn uniformly from
  // the range.
  std::optional<SnrRange> noise_snr_range_db;
  uint64_t noise_seed = 0;
};

struct PairEntry {
  std::string utterance_id;
  int variant_index = 0;
  std::string rir_id;
};

// The full pairing decision for a corpus build. A pure function of the
// sorted id lists and the sampling seed; directory enumeration order never
// changes it.
struct PairingPlan {
  std::vector<PairEntry> entries;  // sorted by (utterance_id, variant_index)
};

// For each utterance, draws variants_per_utterance RIRs without replacement
// (with replacement only when the pool is smaller than the request) from a
// generator seeded by (sampling_seed, hash of the utterance id). Throws
// EmptyPool when either list is empty, DuplicateId on repeated ids.
PairingPlan plan_pairs(std::vector<std::string> utterance_ids,
                       std::vector<std::string> rir_ids,
                       const BuildConfig& config);

enum class ClipCheck { kOk, kClipped };

// Clipped means any |sample| > 1.0 in the real-valued domain, checked before
// quantization would silently clamp it.
ClipCheck check_clipping(const AudioBuffer& buffer);

// Pure gain so that the output RMS equals target_db. Throws ZeroSignal on an
// all-zero buffer.
AudioBuffer normalize_rms(const AudioBuffer& buffer, double target_db);

// Adds seeded gaussian white noise at an SNR drawn uniformly from the range.
// Both the SNR draw and the noise sequence are functions of
// (seed, file_key), so partial rebuilds reproduce identical files regardless
// of build order. Throws ZeroSignal when the input has zero RMS.
AudioBuffer add_noise(const AudioBuffer& buffer, const SnrRange& snr_range_db,
                      uint64_t seed, std::string_view file_key);

// Output filename (without directory) for one pairing.
std::string output_file_name(const PairEntry& entry);

// Inverse of output_file_name on the stem; returns false when the stem does
// not follow the naming scheme.
bool parse_file_key(std::string_view stem, std::string* utterance_id,
                    std::string* rir_id, int* variant_index);

// One utterance of clean speech. `text` may be empty when no transcript is
// known at build time.
struct UtteranceInfo {
  std::string utterance_id;
  std::filesystem::path clean_path;
  std::string speaker_id;
  std::string text;
};

// Sorted utterance list from a directory of WAVs (id = file stem, speaker
// parsed from the id) or from a manifest file with lines
// `utterance_id<TAB>clean_path[<TAB>speaker_id[<TAB>text]]`.
// Throws DuplicateId on repeated ids.
std::vector<UtteranceInfo> scan_utterance_dir(
    const std::filesystem::path& clean_dir);
std::vector<UtteranceInfo> read_utterance_manifest(
    const std::filesystem::path& manifest_path);

// Sorted (rir_id, path) pairs for every .wav under rir_dir.
std::vector<std::pair<std::string, std::filesystem::path>> scan_rir_dir(
    const std::filesystem::path& rir_dir);

struct Exclusion {
  std::string rir_id;
  std::string utterance_id;
  std::string reason;  // "clipping", "unreadable_rir", "rate_mismatch", ...
};

struct BuildReport {
  std::size_t planned = 0;
  std::size_t written = 0;
  std::size_t excluded_clipping = 0;
  std::size_t excluded_metadata = 0;
};

struct BuildResult {
  BuildReport report;
  std::vector<FileRecord> records;      // sorted, one per written file
  std::vector<Exclusion> exclusions;    // sorted
};

// Runs the full pipeline: plan, convolve, optional RMS normalization,
// optional noise, clipping check, write. WAVs land under out_dir/wav;
// metadata.csv, exclusions.csv and build_report.json under out_dir.
// Per-file problems become exclusions rather than aborting the batch; only
// an unusable out_dir or empty inputs throw. Output bytes are independent
// of the worker count.
BuildResult build_corpus(const std::vector<UtteranceInfo>& utterances,
                         const std::filesystem::path& rir_dir,
                         const std::filesystem::path& out_dir,
                         const BuildConfig& config, int workers = 1);

}  // namespace reverbkit

#endif  // REVERBKIT_CORPUS_BUILDER_HPP
