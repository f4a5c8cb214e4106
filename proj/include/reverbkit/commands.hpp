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

#ifndef REVERBKIT_COMMANDS_HPP
#define REVERBKIT_COMMANDS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "reverbkit/corpus_builder.hpp"
#include "reverbkit/eval_stats.hpp"
#include "reverbkit/metadata.hpp"

namespace reverbkit {

// Everything a pipeline run may randomize or threshold, in one struct. Each
// command writes the resolved copy (defaults merged with config file and
// flags) next to its outputs, so no run depends on hidden defaults.
//
// Exactly three seeds exist: sampling (pairing and split assignment), noise,
// and bootstrap.
struct PipelineConfig {
  int variants_per_utterance = 10;
  uint64_t sampling_seed = 42;
  uint64_t noise_seed = 0;
  int output_rate_hz = 16000;
  std::optional<double> normalize_target_rms_db;
  std::optional<SnrRange> noise_snr_range_db;

  SplitRatios split_ratios;

  int bootstrap_resamples = 2000;
  uint64_t bootstrap_seed = 0;
  std::vector<double> rt60_bin_edges = {0.2, 0.4, 0.6, 0.8, 1.0, 1.2};
  std::vector<double> drr_bin_edges = {-10, -5, 0, 5, 10, 15};
  std::vector<double> duration_bin_edges = {0, 5, 10, 15, 20, 25, 30, 40};
  WerAggregate wer_aggregate = WerAggregate::kPooled;
  int hardest_k = 25;

  int workers = 1;
};

std::string pipeline_config_to_json(const PipelineConfig& config);
PipelineConfig pipeline_config_from_json_file(
    const std::filesystem::path& path);

// Writes the resolved config next to an output file or into an output
// directory.
void write_resolved_config(const PipelineConfig& config,
                           const std::filesystem::path& target);

// Exit discipline shared by all commands: 0 success, 1 fatal (thrown as an
// exception and mapped by the CLI), 2 completed with recorded per-file
// failures.
struct CommandStatus {
  int exit_code = 0;
  std::size_t per_file_failures = 0;
};

// One row per RIR: rir_id, rt60_s, drr_db, c50_db, length_samples,
// sample_rate. Unreadable files go to `<out_csv>.failures.csv` with a
// reason; an unavailable RT60 estimate is data ("NA"), not a failure.
CommandStatus cmd_metrics(const std::filesystem::path& rir_dir,
                          const std::filesystem::path& out_csv,
                          const PipelineConfig& config);

// Full corpus build; see build_corpus. `manifest` may be empty, in which
// case clean_dir is scanned and speaker ids come from the id prefix.
CommandStatus cmd_build(const std::filesystem::path& clean_dir,
                        const std::filesystem::path& manifest,
                        const std::filesystem::path& rir_dir,
                        const std::filesystem::path& out_dir,
                        const PipelineConfig& config,
                        BuildResult* result_out = nullptr);

// Assigns speaker-stratified splits and rewrites the metadata plus
// train.csv/dev.csv/test.csv beside it.
CommandStatus cmd_split(const std::filesystem::path& metadata_csv,
                        const PipelineConfig& config);

// Scores one hypothesis manifest against a reference manifest. Hypothesis
// ids may be reverberant file keys (`utt__rirX__vN`); the base utterance id
// is used for pairing and, when metadata_csv is given, acoustic fields are
// joined from the matching record.
CommandStatus cmd_score(const std::filesystem::path& refs_tsv,
                        const std::filesystem::path& hyps_tsv,
                        const std::string& condition_tag,
                        const std::filesystem::path& out_csv,
                        const std::filesystem::path& metadata_csv,
                        const PipelineConfig& config);

struct AnalyzeInputs {
  std::vector<std::filesystem::path> scores_csvs;
  std::filesystem::path metadata_csv;  // optional; enables corpus stats
  std::filesystem::path out_dir;
  std::string clean_condition = "clean";
  std::string reverb_condition = "reverb";
  // Condition whose scores feed the trend/heatmap/hardest reports.
  std::string trend_condition = "reverb";
};

// Emits summary.json, per-condition intervals, paired deltas, trend CSVs,
// the WER heatmap, the hardest-utterance ranking and (with metadata) corpus
// statistics and the coverage grid. Reruns are byte-identical.
CommandStatus cmd_analyze(const AnalyzeInputs& inputs,
                          const PipelineConfig& config);

struct RebuildAllInputs {
  std::filesystem::path clean_dir;
  std::filesystem::path manifest;  // optional
  std::filesystem::path rir_dir;
  std::filesystem::path out_dir;
  // Optional externally produced hypothesis manifests; scoring and analysis
  // run only when both are present.
  std::filesystem::path refs_tsv;
  std::filesystem::path hyps_clean_tsv;
  std::filesystem::path hyps_reverb_tsv;
};

// metrics -> build -> split -> (score -> analyze when hypotheses are
// supplied). Each stage consumes only the previous stage's outputs.
CommandStatus cmd_rebuild_all(const RebuildAllInputs& inputs,
                              const PipelineConfig& config);

}  // namespace reverbkit

#endif  // REVERBKIT_COMMANDS_HPP
