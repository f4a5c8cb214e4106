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

// Command line front end for the reverberant corpus pipeline. Subcommands
// mirror the pipeline stages: metrics, build, split, score, analyze and the
// rebuild-all composition. Progress goes to stderr; every artifact is a
// file, so stdout stays clean for scripting.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "reverbkit/commands.hpp"

namespace {

using reverbkit::PipelineConfig;

// Config file values override struct defaults; explicit flags override both.
PipelineConfig load_base_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      return reverbkit::pipeline_config_from_json_file(argv[i + 1]);
    }
    if (arg.rfind("--config=", 0) == 0) {
      return reverbkit::pipeline_config_from_json_file(arg.substr(9));
    }
  }
  return PipelineConfig{};
}

void add_common_flags(CLI::App* cmd, PipelineConfig* config,
                      std::string* config_path) {
  cmd->add_option("--config", *config_path,
                  "JSON config file with defaults (flags override)");
  cmd->add_option("--workers", config->workers, "Worker thread count");
}

void add_build_flags(CLI::App* cmd, PipelineConfig* config,
                     std::vector<double>* snr, double* normalize_target) {
  cmd->add_option("--variants", config->variants_per_utterance,
                  "Reverberant variants per utterance");
  cmd->add_option("--sampling-seed", config->sampling_seed,
                  "Seed for RIR sampling and split assignment");
  cmd->add_option("--noise-seed", config->noise_seed,
                  "Seed for the additive-noise stage");
  cmd->add_option("--rate", config->output_rate_hz, "Output sample rate, Hz");
  cmd->add_option("--normalize", *normalize_target,
                  "Normalize each file to this RMS level in dB");
  cmd->add_option("--noise-snr", *snr,
                  "SNR range in dB for white noise, e.g. --noise-snr 10 15")
      ->expected(2);
}

void add_analysis_flags(CLI::App* cmd, PipelineConfig* config,
                        std::string* aggregate) {
  cmd->add_option("--bootstrap-resamples", config->bootstrap_resamples,
                  "Bootstrap resample count");
  cmd->add_option("--bootstrap-seed", config->bootstrap_seed,
                  "Bootstrap seed");
  cmd->add_option("--rt60-bins", config->rt60_bin_edges,
                  "RT60 bin edges in seconds");
  cmd->add_option("--drr-bins", config->drr_bin_edges, "DRR bin edges in dB");
  cmd->add_option("--duration-bins", config->duration_bin_edges,
                  "Duration bin edges in seconds");
  cmd->add_option("--aggregate", *aggregate,
                  "WER aggregation: pooled or mean_utterance");
  cmd->add_option("--hardest-k", config->hardest_k,
                  "Size of the hardest-utterance ranking");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverberant speech corpus builder and evaluation toolkit"};
  app.require_subcommand(1);

  PipelineConfig config;
  try {
    config = load_base_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::string config_path;
  std::string aggregate;        // parsed after flags are known
  std::vector<double> snr;      // two values when given
  double normalize_target = 0.0;

  // metrics
  auto* metrics = app.add_subcommand(
      "metrics", "Annotate every RIR with RT60, DRR and C50");
  std::string rir_dir, out_csv;
  metrics->add_option("--rir-dir", rir_dir, "Directory of RIR WAVs")
      ->required();
  metrics->add_option("--out", out_csv, "Output CSV path")->required();
  add_common_flags(metrics, &config, &config_path);

  // build
  auto* build = app.add_subcommand(
      "build", "Convolve clean speech with RIRs and emit corpus + metadata");
  std::string clean_dir, manifest, build_rir_dir, out_dir;
  build->add_option("--clean-dir", clean_dir, "Directory of clean WAVs");
  build->add_option("--manifest", manifest,
                    "Utterance manifest TSV (id, path, [speaker], [text])");
  build->add_option("--rir-dir", build_rir_dir, "Directory of RIR WAVs")
      ->required();
  build->add_option("--out-dir", out_dir, "Output directory")->required();
  add_common_flags(build, &config, &config_path);
  add_build_flags(build, &config, &snr, &normalize_target);

  // split
  auto* split = app.add_subcommand(
      "split", "Assign speaker-stratified train/dev/test splits");
  std::string metadata_csv;
  std::vector<double> ratios;
  split->add_option("--metadata", metadata_csv, "Metadata CSV to update")
      ->required();
  split->add_option("--ratios", ratios,
                    "Train/dev/test proportions, e.g. --ratios 0.82 0.087 0.093")
      ->expected(3);
  split->add_option("--sampling-seed", config.sampling_seed,
                    "Seed for split tie-breaking");
  add_common_flags(split, &config, &config_path);

  // score
  auto* score = app.add_subcommand(
      "score", "Score a hypothesis manifest against references");
  std::string refs, hyps, condition = "reverb", score_out, score_metadata;
  score->add_option("--refs", refs, "Reference manifest TSV")->required();
  score->add_option("--hyps", hyps, "Hypothesis manifest TSV")->required();
  score->add_option("--condition", condition, "Condition tag for the scores");
  score->add_option("--out", score_out, "Output scores CSV")->required();
  score->add_option("--metadata", score_metadata,
                    "Metadata CSV for the acoustic-condition join");
  add_common_flags(score, &config, &config_path);

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "Paired deltas, bootstrap CIs, trends, heatmap, rankings");
  reverbkit::AnalyzeInputs analyze_inputs;
  std::vector<std::string> scores_csvs;
  std::string analyze_metadata, analyze_out;
  analyze->add_option("--scores", scores_csvs, "Scores CSVs (one or more)")
      ->required();
  analyze->add_option("--metadata", analyze_metadata,
                      "Metadata CSV for corpus statistics and coverage");
  analyze->add_option("--out-dir", analyze_out, "Output directory")
      ->required();
  analyze->add_option("--clean-condition", analyze_inputs.clean_condition,
                      "Condition tag of the clean scores");
  analyze->add_option("--reverb-condition", analyze_inputs.reverb_condition,
                      "Condition tag of the reverberant scores");
  analyze->add_option("--trend-condition", analyze_inputs.trend_condition,
                      "Condition whose scores feed trends and rankings");
  add_common_flags(analyze, &config, &config_path);
  add_analysis_flags(analyze, &config, &aggregate);

  // rebuild-all
  auto* rebuild = app.add_subcommand(
      "rebuild-all", "metrics -> build -> split (-> score -> analyze)");
  reverbkit::RebuildAllInputs rebuild_inputs;
  std::string r_clean, r_manifest, r_rirs, r_out, r_refs, r_hyps_clean,
      r_hyps_reverb;
  rebuild->add_option("--clean-dir", r_clean, "Directory of clean WAVs");
  rebuild->add_option("--manifest", r_manifest, "Utterance manifest TSV");
  rebuild->add_option("--rir-dir", r_rirs, "Directory of RIR WAVs")
      ->required();
  rebuild->add_option("--out-dir", r_out, "Output directory")->required();
  rebuild->add_option("--refs", r_refs, "Reference manifest TSV");
  rebuild->add_option("--hyps-clean", r_hyps_clean,
                      "Hypotheses for the clean condition");
  rebuild->add_option("--hyps-reverb", r_hyps_reverb,
                      "Hypotheses for the reverberant condition");
  add_common_flags(rebuild, &config, &config_path);
  add_build_flags(rebuild, &config, &snr, &normalize_target);
  add_analysis_flags(rebuild, &config, &aggregate);
  std::vector<double> rebuild_ratios;
  rebuild->add_option("--ratios", rebuild_ratios,
                      "Train/dev/test proportions")
      ->expected(3);

  CLI11_PARSE(app, argc, argv);

  try {
    const bool normalize_set =
        (app.got_subcommand(build) && build->count("--normalize") > 0) ||
        (app.got_subcommand(rebuild) && rebuild->count("--normalize") > 0);
    if (normalize_set) config.normalize_target_rms_db = normalize_target;
    if (snr.size() == 2) {
      config.noise_snr_range_db = reverbkit::SnrRange{snr[0], snr[1]};
    }
    if (!aggregate.empty()) {
      if (aggregate == "pooled") {
        config.wer_aggregate = reverbkit::WerAggregate::kPooled;
      } else if (aggregate == "mean_utterance") {
        config.wer_aggregate = reverbkit::WerAggregate::kMeanUtterance;
      } else {
        throw reverbkit::InvalidParameter("unknown aggregate: " + aggregate);
      }
    }

    reverbkit::CommandStatus status;
    if (app.got_subcommand(metrics)) {
      status = reverbkit::cmd_metrics(rir_dir, out_csv, config);
    } else if (app.got_subcommand(build)) {
      if (clean_dir.empty() && manifest.empty()) {
        throw reverbkit::InvalidParameter(
            "build needs --clean-dir or --manifest");
      }
      status = reverbkit::cmd_build(clean_dir, manifest, build_rir_dir,
                                    out_dir, config);
    } else if (app.got_subcommand(split)) {
      if (ratios.size() == 3) {
        config.split_ratios = {ratios[0], ratios[1], ratios[2]};
      }
      status = reverbkit::cmd_split(metadata_csv, config);
    } else if (app.got_subcommand(score)) {
      status = reverbkit::cmd_score(refs, hyps, condition, score_out,
                                    score_metadata, config);
    } else if (app.got_subcommand(analyze)) {
      analyze_inputs.scores_csvs.assign(scores_csvs.begin(),
                                        scores_csvs.end());
      analyze_inputs.metadata_csv = analyze_metadata;
      analyze_inputs.out_dir = analyze_out;
      status = reverbkit::cmd_analyze(analyze_inputs, config);
    } else if (app.got_subcommand(rebuild)) {
      if (r_clean.empty() && r_manifest.empty()) {
        throw reverbkit::InvalidParameter(
            "rebuild-all needs --clean-dir or --manifest");
      }
      if (rebuild_ratios.size() == 3) {
        config.split_ratios = {rebuild_ratios[0], rebuild_ratios[1],
                               rebuild_ratios[2]};
      }
      rebuild_inputs.clean_dir = r_clean;
      rebuild_inputs.manifest = r_manifest;
      rebuild_inputs.rir_dir = r_rirs;
      rebuild_inputs.out_dir = r_out;
      rebuild_inputs.refs_tsv = r_refs;
      rebuild_inputs.hyps_clean_tsv = r_hyps_clean;
      rebuild_inputs.hyps_reverb_tsv = r_hyps_reverb;
      status = reverbkit::cmd_rebuild_all(rebuild_inputs, config);
    }
    return status.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
