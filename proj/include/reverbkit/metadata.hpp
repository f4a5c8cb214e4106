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

#ifndef REVERBKIT_METADATA_HPP
#define REVERBKIT_METADATA_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reverbkit/bins.hpp"

namespace reverbkit {

// One row of the universal metadata table: every generated file with its
// provenance, split and acoustic condition. Filtering and grouping by
// condition then never requires loading audio.
struct FileRecord {
  std::string utterance_id;
  std::string speaker_id;
  int variant_index = 0;
  std::string clean_path;
  std::string reverb_path;
  std::string rir_id;
  // "train", "dev" or "test"; "unassigned" between corpus build and split
  // assignment.
  std::string split = "unassigned";
  double duration_s = 0.0;
  std::optional<double> rt60_s;  // empty when no estimate was available
  double drr_db = 0.0;           // +/-inf sentinels are valid values
  double c50_db = 0.0;           // +inf sentinel is a valid value
  double rms_db = 0.0;
};

// Fixed, versioned column order of the metadata CSV.
const std::vector<std::string>& metadata_columns();

// Speaker id per the `speaker-chapter-utterance` id convention: the prefix
// before the first '-', or the whole id when there is none.
std::string speaker_from_utterance_id(std::string_view utterance_id);

// Writes rows sorted by (utterance_id, variant_index), atomically.
// Throws DuplicateKey when two records share that key.
void write_metadata(std::vector<FileRecord> records,
                    const std::filesystem::path& path);

// Round-trip inverse of write_metadata. Throws SchemaMismatch when the
// header does not match metadata_columns(), DuplicateKey on repeated keys.
std::vector<FileRecord> read_metadata(const std::filesystem::path& path);

// Per-split convenience tables (train.csv, dev.csv, test.csv) written next
// to the given directory with the same schema.
void write_split_csvs(const std::vector<FileRecord>& records,
                      const std::filesystem::path& directory);

struct SplitRatios {
  double train = 0.82;
  double dev = 0.087;
  double test = 0.093;
};

inline constexpr std::array<std::string_view, 3> kSplitNames = {"train", "dev",
                                                                "test"};

// Whole-speaker assignment to train/dev/test.
struct SplitAssignment {
  std::map<std::string, std::string> speaker_to_split;
  SplitRatios ratios;
  uint64_t seed = 0;
};

// Greedy seeded assignment: speakers ordered largest file count first (seed
// shuffles equal-count ties), each assigned to the most underfilled split.
// No speaker ever spans two splits. Throws TooFewSpeakers below 3 speakers,
// InvalidParameter for ratios that are not positive or do not sum to 1.
SplitAssignment assign_splits(const std::vector<FileRecord>& records,
                              const SplitRatios& ratios, uint64_t seed);

void apply_split(std::vector<FileRecord>& records,
                 const SplitAssignment& assignment);

// Moment statistics for one metadata column. Non-finite values (inf
// sentinels, unavailable estimates) are excluded from the moments but
// tallied in n_excluded.
struct FieldStats {
  std::size_t n = 0;
  std::size_t n_excluded = 0;
  double mean = 0.0;
  double median = 0.0;
  double std_dev = 0.0;  // population standard deviation
  double min = 0.0;
  double max = 0.0;
};

struct CorpusSummary {
  std::size_t total_files = 0;
  double total_hours = 0.0;
  FieldStats duration_s;
  FieldStats rt60_s;
  FieldStats drr_db;
};

// Throws EmptyTable on an empty record set.
CorpusSummary summarize(const std::vector<FileRecord>& records);

// File counts per (RT60 bin x DRR bin) cell. Records whose RT60 or DRR falls
// outside the edges (or is unavailable) land in `outside`.
struct CoverageGrid {
  std::vector<std::vector<std::size_t>> counts;  // [rt60 bin][drr bin]
  std::size_t outside = 0;
};

CoverageGrid coverage_counts(const std::vector<FileRecord>& records,
                             const BinSpec& rt60_bins,
                             const BinSpec& drr_bins);

}  // namespace reverbkit

#endif  // REVERBKIT_METADATA_HPP
