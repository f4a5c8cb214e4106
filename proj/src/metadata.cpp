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

#include "reverbkit/metadata.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "reverbkit/csv.hpp"
#include "reverbkit/rng.hpp"

namespace reverbkit {

const std::vector<std::string>& metadata_columns() {
  static const std::vector<std::string> columns = {
      "utterance_id", "speaker_id", "variant_index", "clean_path",
      "reverb_path",  "rir_id",     "split",         "duration_s",
      "rt60_s",       "drr_db",     "c50_db",        "rms_db"};
  return columns;
}

std::string speaker_from_utterance_id(std::string_view utterance_id) {
  const std::size_t dash = utterance_id.find('-');
  if (dash == std::string_view::npos) return std::string(utterance_id);
  return std::string(utterance_id.substr(0, dash));
}

namespace {

void sort_records(std::vector<FileRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const FileRecord& a, const FileRecord& b) {
              if (a.utterance_id != b.utterance_id) {
                return a.utterance_id < b.utterance_id;
              }
              return a.variant_index < b.variant_index;
            });
}

void check_unique_keys(const std::vector<FileRecord>& sorted) {
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].utterance_id == sorted[i - 1].utterance_id &&
        sorted[i].variant_index == sorted[i - 1].variant_index) {
      throw DuplicateKey("duplicate (utterance_id, variant_index): " +
                         sorted[i].utterance_id + ", v" +
                         std::to_string(sorted[i].variant_index));
    }
  }
}

std::vector<std::string> record_to_row(const FileRecord& r) {
  return {r.utterance_id,
          r.speaker_id,
          std::to_string(r.variant_index),
          r.clean_path,
          r.reverb_path,
          r.rir_id,
          r.split,
          format_double(r.duration_s),
          format_optional(r.rt60_s),
          format_double(r.drr_db),
          format_double(r.c50_db),
          format_double(r.rms_db)};
}

FileRecord row_to_record(const std::vector<std::string>& row) {
  FileRecord r;
  r.utterance_id = row[0];
  r.speaker_id = row[1];
  r.variant_index = static_cast<int>(parse_double(row[2]));
  r.clean_path = row[3];
  r.reverb_path = row[4];
  r.rir_id = row[5];
  r.split = row[6];
  r.duration_s = parse_double(row[7]);
  r.rt60_s = parse_optional(row[8]);
  r.drr_db = parse_double(row[9]);
  r.c50_db = parse_double(row[10]);
  r.rms_db = parse_double(row[11]);
  return r;
}

std::string records_to_csv(const std::vector<FileRecord>& records) {
  std::string text = csv_join(metadata_columns());
  text.push_back('\n');
  for (const FileRecord& r : records) {
    text.append(csv_join(record_to_row(r)));
    text.push_back('\n');
  }
  return text;
}

}  // namespace

void write_metadata(std::vector<FileRecord> records,
                    const std::filesystem::path& path) {
  sort_records(records);
  check_unique_keys(records);
  write_text_atomic(path, records_to_csv(records));
}

std::vector<FileRecord> read_metadata(const std::filesystem::path& path) {
  const auto rows = read_csv(path);
  if (rows.empty() || rows[0] != metadata_columns()) {
    throw SchemaMismatch("unexpected metadata header in " + path.string());
  }
  std::vector<FileRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != metadata_columns().size()) {
      throw SchemaMismatch("row " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) + " fields in " +
                           path.string());
    }
    records.push_back(row_to_record(rows[i]));
  }
  std::vector<FileRecord> sorted = records;
  sort_records(sorted);
  check_unique_keys(sorted);
  return records;
}

void write_split_csvs(const std::vector<FileRecord>& records,
                      const std::filesystem::path& directory) {
  for (const auto split : kSplitNames) {
    std::vector<FileRecord> subset;
    for (const FileRecord& r : records) {
      if (r.split == split) subset.push_back(r);
    }
    sort_records(subset);
    write_text_atomic(directory / (std::string(split) + ".csv"),
                      records_to_csv(subset));
  }
}

SplitAssignment assign_splits(const std::vector<FileRecord>& records,
                              const SplitRatios& ratios, uint64_t seed) {
  const double sum = ratios.train + ratios.dev + ratios.test;
  if (!(ratios.train > 0) || !(ratios.dev > 0) || !(ratios.test > 0) ||
      std::fabs(sum - 1.0) > 1e-9) {
    throw InvalidParameter("split ratios must be positive and sum to 1");
  }

  std::unordered_map<std::string, std::size_t> files_per_speaker;
  for (const FileRecord& r : records) {
    if (r.speaker_id.empty()) {
      throw InvalidParameter("record without speaker_id: " + r.utterance_id);
    }
    ++files_per_speaker[r.speaker_id];
  }
  if (files_per_speaker.size() < 3) {
    throw TooFewSpeakers("need at least 3 speakers, have " +
                         std::to_string(files_per_speaker.size()));
  }

  std::vector<std::pair<std::string, std::size_t>> speakers(
      files_per_speaker.begin(), files_per_speaker.end());
  std::sort(speakers.begin(), speakers.end());
  // The seed only decides the order among equal-sized speakers; the greedy
  // itself is deterministic.
  SeededRng rng(seed);
  for (std::size_t i = speakers.size(); i > 1; --i) {
    std::swap(speakers[i - 1], speakers[rng.bounded(i)]);
  }
  std::stable_sort(speakers.begin(), speakers.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });

  const double total = static_cast<double>(records.size());
  const double targets[3] = {ratios.train * total, ratios.dev * total,
                             ratios.test * total};
  double assigned[3] = {0.0, 0.0, 0.0};

  SplitAssignment result;
  result.ratios = ratios;
  result.seed = seed;
  for (const auto& [speaker, count] : speakers) {
    // Most underfilled split first; ties resolve to train, then dev.
    int best = 0;
    for (int s = 1; s < 3; ++s) {
      if (targets[s] - assigned[s] > targets[best] - assigned[best]) best = s;
    }
    result.speaker_to_split[speaker] = std::string(kSplitNames[best]);
    assigned[best] += static_cast<double>(count);
  }
  return result;
}

void apply_split(std::vector<FileRecord>& records,
                 const SplitAssignment& assignment) {
  for (FileRecord& r : records) {
    const auto it = assignment.speaker_to_split.find(r.speaker_id);
    if (it == assignment.speaker_to_split.end()) {
      throw InvalidParameter("no split for speaker " + r.speaker_id);
    }
    r.split = it->second;
  }
}

namespace {

FieldStats field_stats(std::vector<double> values, std::size_t excluded) {
  FieldStats stats;
  stats.n_excluded = excluded;
  stats.n = values.size();
  if (values.empty()) return stats;
  std::sort(values.begin(), values.end());
  stats.min = values.front();
  stats.max = values.back();
  const std::size_t n = values.size();
  stats.median = n % 2 == 1 ? values[n / 2]
                            : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / double(n);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  stats.mean = mean;
  stats.std_dev = std::sqrt(var / double(n));  // population convention
  return stats;
}

}  // namespace

CorpusSummary summarize(const std::vector<FileRecord>& records) {
  if (records.empty()) throw EmptyTable("summarize: no records");
  CorpusSummary summary;
  summary.total_files = records.size();

  std::vector<double> durations, rt60s, drrs;
  std::size_t rt60_excluded = 0, drr_excluded = 0;
  double total_seconds = 0.0;
  for (const FileRecord& r : records) {
    durations.push_back(r.duration_s);
    total_seconds += r.duration_s;
    if (r.rt60_s.has_value() && std::isfinite(*r.rt60_s)) {
      rt60s.push_back(*r.rt60_s);
    } else {
      ++rt60_excluded;
    }
    if (std::isfinite(r.drr_db)) {
      drrs.push_back(r.drr_db);
    } else {
      ++drr_excluded;
    }
  }
  summary.total_hours = total_seconds / 3600.0;
  summary.duration_s = field_stats(std::move(durations), 0);
  summary.rt60_s = field_stats(std::move(rt60s), rt60_excluded);
  summary.drr_db = field_stats(std::move(drrs), drr_excluded);
  return summary;
}

CoverageGrid coverage_counts(const std::vector<FileRecord>& records,
                             const BinSpec& rt60_bins,
                             const BinSpec& drr_bins) {
  CoverageGrid grid;
  grid.counts.assign(rt60_bins.bin_count(),
                     std::vector<std::size_t>(drr_bins.bin_count(), 0));
  for (const FileRecord& r : records) {
    const double rt = r.rt60_s.has_value()
                          ? *r.rt60_s
                          : std::numeric_limits<double>::quiet_NaN();
    const std::size_t i = rt60_bins.index_of(rt);
    const std::size_t j = drr_bins.index_of(r.drr_db);
    if (i == BinSpec::npos || j == BinSpec::npos) {
      ++grid.outside;
    } else {
      ++grid.counts[i][j];
    }
  }
  return grid;
}

}  // namespace reverbkit
