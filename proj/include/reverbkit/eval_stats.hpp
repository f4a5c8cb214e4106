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

#ifndef REVERBKIT_EVAL_STATS_HPP
#define REVERBKIT_EVAL_STATS_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "reverbkit/bins.hpp"

namespace reverbkit {

// Per-utterance scoring result. Acoustic fields are carried over from the
// metadata table for trend analysis and are NaN when unknown (e.g. for the
// clean condition).
struct ScoredUtterance {
  std::string utterance_id;
  std::string condition;  // "clean", "reverb" or an ablation tag
  uint32_t edit_errors = 0;
  uint32_t ref_words = 1;
  double wer = 0.0;  // edit_errors / ref_words
  double rt60_s = std::numeric_limits<double>::quiet_NaN();
  double drr_db = std::numeric_limits<double>::quiet_NaN();
  double duration_s = std::numeric_limits<double>::quiet_NaN();
  std::string ref_text;
  std::string hyp_text;
};

struct WerCounts {
  uint32_t edit_errors = 0;
  uint32_t ref_words = 0;
  double wer = 0.0;
};

// Token-level Levenshtein distance, unit cost for substitution, insertion
// and deletion. Throws EmptyReference on an empty reference.
WerCounts wer(const std::vector<std::string>& ref_tokens,
              const std::vector<std::string>& hyp_tokens);

enum class WerAggregate {
  kPooled,         // sum(errors) / sum(ref_words), the usual ASR convention
  kMeanUtterance,  // mean of per-utterance rates
};

// Throws EmptySet on empty input.
double corpus_wer(std::span<const ScoredUtterance> scores,
                  WerAggregate aggregate = WerAggregate::kPooled);

struct BootstrapConfig {
  int resamples = 2000;
  uint64_t seed = 0;
  double lo_percentile = 2.5;
  double hi_percentile = 97.5;
};

struct Interval {
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Percentile bootstrap over item indices. Resample b draws n indices with
// replacement from a generator seeded by (config.seed, b), so serial and
// parallel execution produce identical percentile inputs. CI endpoints are
// linearly interpolated order statistics of the resampled statistic; the
// point estimate is the statistic of the original sample.
Interval bootstrap_ci(
    std::size_t n_items,
    const std::function<double(std::span<const uint32_t>)>& statistic,
    const BootstrapConfig& config, int workers = 1);

// Bootstrap CI of the corpus WER over a score set.
Interval bootstrap_corpus_wer(std::span<const ScoredUtterance> scores,
                              const BootstrapConfig& config,
                              WerAggregate aggregate = WerAggregate::kPooled,
                              int workers = 1);

struct PairedDelta {
  std::string utterance_id;
  double wer_clean = 0.0;
  double wer_reverb = 0.0;
  double delta = 0.0;  // wer_reverb - wer_clean
};

struct PairedSummary {
  std::vector<PairedDelta> deltas;  // sorted by utterance_id
  double mean_delta = 0.0;
  // corpus_wer(reverb) / corpus_wer(clean) - 1, from the pooled rates.
  double relative_increase = 0.0;
};

// Pairs the two score sets by utterance id. Throws UnpairedUtterance naming
// the first id present in one set but not the other.
PairedSummary paired_delta(std::span<const ScoredUtterance> clean_scores,
                           std::span<const ScoredUtterance> reverb_scores);

// Bootstrap CI of the mean paired delta, resampling utterance pairs.
Interval bootstrap_mean_paired_delta(const PairedSummary& paired,
                                     const BootstrapConfig& config,
                                     int workers = 1);

enum class TrendParameter { kRt60, kDrr, kDuration };

struct TrendBin {
  double lo_edge = 0.0;
  double hi_edge = 0.0;
  std::size_t n = 0;
  double wer = std::numeric_limits<double>::quiet_NaN();
  double ci_lo = std::numeric_limits<double>::quiet_NaN();
  double ci_hi = std::numeric_limits<double>::quiet_NaN();
};

struct TrendReport {
  std::vector<TrendBin> bins;
  // Scores whose parameter is NaN or outside every bin.
  std::size_t outside_n = 0;
  double outside_wer = std::numeric_limits<double>::quiet_NaN();
};

// Corpus WER and bootstrap CI per parameter bin.
TrendReport binned_trend(std::span<const ScoredUtterance> scores,
                         TrendParameter parameter, const BinSpec& bins,
                         const BootstrapConfig& config,
                         WerAggregate aggregate = WerAggregate::kPooled,
                         int workers = 1);

struct HeatmapCell {
  std::size_t n = 0;
  double wer = std::numeric_limits<double>::quiet_NaN();  // NaN when empty
};

struct WerHeatmapGrid {
  std::vector<std::vector<HeatmapCell>> cells;  // [rt60 bin][drr bin]
  std::size_t outside = 0;
};

WerHeatmapGrid wer_heatmap(std::span<const ScoredUtterance> scores,
                           const BinSpec& rt60_bins, const BinSpec& drr_bins,
                           WerAggregate aggregate = WerAggregate::kPooled);

// Top-k utterances by per-utterance WER, descending, ties broken by
// ascending utterance id. k larger than the set returns the full ranking.
// Throws EmptySet on empty input, InvalidParameter for k < 1.
std::vector<ScoredUtterance> hardest_utterances(
    std::span<const ScoredUtterance> scores, std::size_t k = 25);

// Manifest and score-table I/O.

// Lines of `id<TAB>text`; blank lines ignored. Throws DuplicateId.
std::vector<std::pair<std::string, std::string>> read_manifest_tsv(
    const std::filesystem::path& path);

void write_scores_csv(std::span<const ScoredUtterance> scores,
                      const std::filesystem::path& path);
std::vector<ScoredUtterance> read_scores_csv(
    const std::filesystem::path& path);

}  // namespace reverbkit

#endif  // REVERBKIT_EVAL_STATS_HPP
