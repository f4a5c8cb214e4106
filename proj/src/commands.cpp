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

#include "reverbkit/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>

#include "reverbkit/acoustics.hpp"
#include "reverbkit/csv.hpp"
#include "reverbkit/text_norm.hpp"
#include "reverbkit/wav_io.hpp"

#include "json.hpp"

namespace reverbkit {

namespace {

using nlohmann::json;

std::string aggregate_name(WerAggregate aggregate) {
  return aggregate == WerAggregate::kPooled ? "pooled" : "mean_utterance";
}

WerAggregate aggregate_from_name(const std::string& name) {
  if (name == "pooled") return WerAggregate::kPooled;
  if (name == "mean_utterance") return WerAggregate::kMeanUtterance;
  throw InvalidParameter("unknown wer aggregate: " + name);
}

json config_to_json_value(const PipelineConfig& c) {
  json j;
  j["variants_per_utterance"] = c.variants_per_utterance;
  j["sampling_seed"] = c.sampling_seed;
  j["noise_seed"] = c.noise_seed;
  j["output_rate_hz"] = c.output_rate_hz;
  if (c.normalize_target_rms_db.has_value()) {
    j["normalize_target_rms_db"] = *c.normalize_target_rms_db;
  } else {
    j["normalize_target_rms_db"] = nullptr;
  }
  if (c.noise_snr_range_db.has_value()) {
    j["noise_snr_range_db"] = {c.noise_snr_range_db->lo_db,
                               c.noise_snr_range_db->hi_db};
  } else {
    j["noise_snr_range_db"] = nullptr;
  }
  j["split_ratios"] = {c.split_ratios.train, c.split_ratios.dev,
                       c.split_ratios.test};
  j["bootstrap_resamples"] = c.bootstrap_resamples;
  j["bootstrap_seed"] = c.bootstrap_seed;
  j["rt60_bin_edges"] = c.rt60_bin_edges;
  j["drr_bin_edges"] = c.drr_bin_edges;
  j["duration_bin_edges"] = c.duration_bin_edges;
  j["wer_aggregate"] = aggregate_name(c.wer_aggregate);
  j["hardest_k"] = c.hardest_k;
  j["workers"] = c.workers;
  j["text_norm_version"] = kTextNormVersion;
  return j;
}

}  // namespace

std::string pipeline_config_to_json(const PipelineConfig& config) {
  return config_to_json_value(config).dump(2) + "\n";
}

PipelineConfig pipeline_config_from_json_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaMismatch("bad config JSON in " + path.string() + ": " +
                         e.what());
  }
  PipelineConfig c;
  if (j.contains("variants_per_utterance")) {
    c.variants_per_utterance = j["variants_per_utterance"].get<int>();
  }
  if (j.contains("sampling_seed")) {
    c.sampling_seed = j["sampling_seed"].get<uint64_t>();
  }
  if (j.contains("noise_seed")) c.noise_seed = j["noise_seed"].get<uint64_t>();
  if (j.contains("output_rate_hz")) {
    c.output_rate_hz = j["output_rate_hz"].get<int>();
  }
  if (j.contains("normalize_target_rms_db") &&
      !j["normalize_target_rms_db"].is_null()) {
    c.normalize_target_rms_db = j["normalize_target_rms_db"].get<double>();
  }
  if (j.contains("noise_snr_range_db") && !j["noise_snr_range_db"].is_null()) {
    const auto range = j["noise_snr_range_db"];
    c.noise_snr_range_db = SnrRange{range.at(0).get<double>(),
                                    range.at(1).get<double>()};
  }
  if (j.contains("split_ratios")) {
    const auto r = j["split_ratios"];
    c.split_ratios = SplitRatios{r.at(0).get<double>(), r.at(1).get<double>(),
                                 r.at(2).get<double>()};
  }
  if (j.contains("bootstrap_resamples")) {
    c.bootstrap_resamples = j["bootstrap_resamples"].get<int>();
  }
  if (j.contains("bootstrap_seed")) {
    c.bootstrap_seed = j["bootstrap_seed"].get<uint64_t>();
  }
  if (j.contains("rt60_bin_edges")) {
    c.rt60_bin_edges = j["rt60_bin_edges"].get<std::vector<double>>();
  }
  if (j.contains("drr_bin_edges")) {
    c.drr_bin_edges = j["drr_bin_edges"].get<std::vector<double>>();
  }
  if (j.contains("duration_bin_edges")) {
    c.duration_bin_edges = j["duration_bin_edges"].get<std::vector<double>>();
  }
  if (j.contains("wer_aggregate")) {
    c.wer_aggregate = aggregate_from_name(j["wer_aggregate"].get<std::string>());
  }
  if (j.contains("hardest_k")) c.hardest_k = j["hardest_k"].get<int>();
  if (j.contains("workers")) c.workers = j["workers"].get<int>();
  return c;
}

void write_resolved_config(const PipelineConfig& config,
                           const std::filesystem::path& target) {
  std::filesystem::path path;
  if (std::filesystem::is_directory(target)) {
    path = target / "config_resolved.json";
  } else {
    path = target;
    path += ".config.json";
  }
  write_text_atomic(path, pipeline_config_to_json(config));
}

CommandStatus cmd_metrics(const std::filesystem::path& rir_dir,
                          const std::filesystem::path& out_csv,
                          const PipelineConfig& config) {
  const auto rirs = scan_rir_dir(rir_dir);

  std::string table = "rir_id,rt60_s,drr_db,c50_db,length_samples,sample_rate\n";
  std::string failures = "rir_id,reason\n";
  std::size_t failed = 0;
  for (const auto& [id, path] : rirs) {
    try {
      const AudioBuffer rir = read_wav(path);
      const AcousticMetrics m = compute_rir_metrics(rir);
      table += csv_join({id, format_optional(m.rt60_s),
                         format_double(m.drr_db), format_double(m.c50_db),
                         std::to_string(rir.size()),
                         std::to_string(rir.sample_rate_hz)});
      table += '\n';
    } catch (const Error& e) {
      failures += csv_join({id, e.what()});
      failures += '\n';
      ++failed;
    }
  }
  write_text_atomic(out_csv, table);
  write_text_atomic(out_csv.string() + ".failures.csv", failures);
  write_resolved_config(config, out_csv);

  std::cerr << "metrics: " << rirs.size() - failed << " annotated, " << failed
            << " failed\n";
  CommandStatus status;
  status.per_file_failures = failed;
  if (failed == rirs.size() && !rirs.empty()) {
    status.exit_code = 1;  // total failure
  } else if (failed > 0 || rirs.empty()) {
    status.exit_code = 2;
  }
  return status;
}

CommandStatus cmd_build(const std::filesystem::path& clean_dir,
                        const std::filesystem::path& manifest,
                        const std::filesystem::path& rir_dir,
                        const std::filesystem::path& out_dir,
                        const PipelineConfig& config,
                        BuildResult* result_out) {
  BuildConfig build_config;
  build_config.variants_per_utterance = config.variants_per_utterance;
  build_config.sampling_seed = config.sampling_seed;
  build_config.output_rate_hz = config.output_rate_hz;
  build_config.normalize_target_rms_db = config.normalize_target_rms_db;
  build_config.noise_snr_range_db = config.noise_snr_range_db;
  build_config.noise_seed = config.noise_seed;

  const std::vector<UtteranceInfo> utterances =
      manifest.empty() ? scan_utterance_dir(clean_dir)
                       : read_utterance_manifest(manifest);

  BuildResult result =
      build_corpus(utterances, rir_dir, out_dir, build_config, config.workers);
  write_resolved_config(config, out_dir);

  std::cerr << "build: planned " << result.report.planned << ", written "
            << result.report.written << ", clipping "
            << result.report.excluded_clipping << ", metadata "
            << result.report.excluded_metadata << "\n";

  CommandStatus status;
  status.per_file_failures = result.report.excluded_metadata;
  if (result.report.excluded_metadata > 0) status.exit_code = 2;
  if (result_out) *result_out = std::move(result);
  return status;
}

CommandStatus cmd_split(const std::filesystem::path& metadata_csv,
                        const PipelineConfig& config) {
  std::vector<FileRecord> records = read_metadata(metadata_csv);
  if (records.empty()) throw EmptyTable("no records in " +
                                        metadata_csv.string());
  const SplitAssignment assignment =
      assign_splits(records, config.split_ratios, config.sampling_seed);
  apply_split(records, assignment);
  write_metadata(records, metadata_csv);
  write_split_csvs(records, metadata_csv.parent_path());
  write_resolved_config(config, metadata_csv);

  std::size_t counts[3] = {0, 0, 0};
  for (const FileRecord& r : records) {
    for (std::size_t s = 0; s < kSplitNames.size(); ++s) {
      if (r.split == kSplitNames[s]) ++counts[s];
    }
  }
  std::cerr << "split: train " << counts[0] << ", dev " << counts[1]
            << ", test " << counts[2] << "\n";
  return {};
}

CommandStatus cmd_score(const std::filesystem::path& refs_tsv,
                        const std::filesystem::path& hyps_tsv,
                        const std::string& condition_tag,
                        const std::filesystem::path& out_csv,
                        const std::filesystem::path& metadata_csv,
                        const PipelineConfig& config) {
  const auto refs = read_manifest_tsv(refs_tsv);
  const auto hyps = read_manifest_tsv(hyps_tsv);

  std::map<std::string, std::string> ref_by_id(refs.begin(), refs.end());

  // Hypothesis ids may be reverberant file keys; resolve them to the base
  // utterance id and remember the variant for the metadata join.
  struct Hyp {
    std::string text;
    std::string rir_id;
    int variant = -1;
  };
  std::map<std::string, Hyp> hyp_by_id;
  for (const auto& [key, text] : hyps) {
    std::string utt = key, rir;
    int variant = -1;
    if (!parse_file_key(key, &utt, &rir, &variant)) {
      utt = key;
      rir.clear();
      variant = -1;
    }
    if (!hyp_by_id.emplace(utt, Hyp{text, rir, variant}).second) {
      throw DuplicateId("two hypotheses for utterance " + utt);
    }
  }
  for (const auto& [id, text] : ref_by_id) {
    if (!hyp_by_id.count(id)) {
      throw UnpairedUtterance("missing hypothesis for " + id);
    }
  }
  for (const auto& [id, hyp] : hyp_by_id) {
    if (!ref_by_id.count(id)) {
      throw UnpairedUtterance("missing reference for " + id);
    }
  }

  std::map<std::pair<std::string, int>, FileRecord> record_by_key;
  if (!metadata_csv.empty()) {
    for (FileRecord& r : read_metadata(metadata_csv)) {
      record_by_key[{r.utterance_id, r.variant_index}] = std::move(r);
    }
  }

  std::vector<ScoredUtterance> scores;
  scores.reserve(ref_by_id.size());
  for (const auto& [id, ref_text] : ref_by_id) {
    const Hyp& hyp = hyp_by_id.at(id);
    const std::vector<std::string> ref_tokens = normalize_text(ref_text);
    if (ref_tokens.empty()) {
      throw EmptyReference("reference for " + id + " normalizes to nothing");
    }
    const WerCounts counts = wer(ref_tokens, normalize_text(hyp.text));

    ScoredUtterance s;
    s.utterance_id = id;
    s.condition = condition_tag;
    s.edit_errors = counts.edit_errors;
    s.ref_words = counts.ref_words;
    s.wer = counts.wer;
    s.ref_text = ref_text;
    s.hyp_text = hyp.text;
    if (hyp.variant >= 0) {
      const auto it = record_by_key.find({id, hyp.variant});
      if (it != record_by_key.end()) {
        const FileRecord& r = it->second;
        s.rt60_s = r.rt60_s.has_value()
                       ? *r.rt60_s
                       : std::numeric_limits<double>::quiet_NaN();
        s.drr_db = r.drr_db;
        s.duration_s = r.duration_s;
      }
    }
    scores.push_back(std::move(s));
  }

  write_scores_csv(scores, out_csv);
  write_resolved_config(config, out_csv);
  std::cerr << "score: " << scores.size() << " utterances, condition "
            << condition_tag << "\n";
  return {};
}

namespace {

std::string trend_to_csv(const TrendReport& report) {
  std::string text = "lo_edge,hi_edge,n,wer,ci_lo,ci_hi\n";
  for (const TrendBin& bin : report.bins) {
    text += csv_join({format_double(bin.lo_edge), format_double(bin.hi_edge),
                      std::to_string(bin.n), format_double(bin.wer),
                      format_double(bin.ci_lo), format_double(bin.ci_hi)});
    text += '\n';
  }
  // Scores outside every bin, reported with NA edges.
  text += csv_join({"NA", "NA", std::to_string(report.outside_n),
                    format_double(report.outside_wer), "NA", "NA"});
  text += '\n';
  return text;
}

json interval_to_json(const Interval& interval, std::size_t n) {
  json j;
  j["n"] = n;
  j["point"] = interval.point;
  j["ci_lo"] = interval.lo;
  j["ci_hi"] = interval.hi;
  return j;
}

json field_stats_to_json(const FieldStats& stats) {
  json j;
  j["n"] = stats.n;
  j["n_excluded"] = stats.n_excluded;
  j["mean"] = stats.mean;
  j["median"] = stats.median;
  j["std"] = stats.std_dev;
  j["min"] = stats.min;
  j["max"] = stats.max;
  return j;
}

}  // namespace

CommandStatus cmd_analyze(const AnalyzeInputs& inputs,
                          const PipelineConfig& config) {
  if (inputs.scores_csvs.empty()) {
    throw InvalidParameter("analyze needs at least one scores file");
  }
  std::error_code ec;
  std::filesystem::create_directories(inputs.out_dir, ec);
  if (!std::filesystem::is_directory(inputs.out_dir)) {
    throw IoFailure("cannot create " + inputs.out_dir.string());
  }

  std::map<std::string, std::vector<ScoredUtterance>> by_condition;
  for (const auto& path : inputs.scores_csvs) {
    for (ScoredUtterance& s : read_scores_csv(path)) {
      by_condition[s.condition].push_back(std::move(s));
    }
  }

  BootstrapConfig boot;
  boot.resamples = config.bootstrap_resamples;
  boot.seed = config.bootstrap_seed;

  json summary;
  summary["bootstrap"] = {{"resamples", boot.resamples},
                          {"seed", boot.seed}};
  summary["wer_aggregate"] = aggregate_name(config.wer_aggregate);
  summary["text_norm_version"] = kTextNormVersion;

  for (const auto& [condition, scores] : by_condition) {
    const Interval ci = bootstrap_corpus_wer(scores, boot,
                                             config.wer_aggregate,
                                             config.workers);
    summary["conditions"][condition] = interval_to_json(ci, scores.size());
  }

  const bool have_pair = by_condition.count(inputs.clean_condition) &&
                         by_condition.count(inputs.reverb_condition);
  if (have_pair) {
    const PairedSummary paired =
        paired_delta(by_condition.at(inputs.clean_condition),
                     by_condition.at(inputs.reverb_condition));
    const Interval delta_ci =
        bootstrap_mean_paired_delta(paired, boot, config.workers);
    json p = interval_to_json(delta_ci, paired.deltas.size());
    p["mean_delta"] = paired.mean_delta;
    p["relative_increase"] = paired.relative_increase;
    summary["paired"] = p;

    std::string deltas_csv = "utterance_id,wer_clean,wer_reverb,delta\n";
    for (const PairedDelta& d : paired.deltas) {
      deltas_csv += csv_join({d.utterance_id, format_double(d.wer_clean),
                              format_double(d.wer_reverb),
                              format_double(d.delta)});
      deltas_csv += '\n';
    }
    write_text_atomic(inputs.out_dir / "paired_deltas.csv", deltas_csv);
  }

  const BinSpec rt60_bins(config.rt60_bin_edges);
  const BinSpec drr_bins(config.drr_bin_edges);
  const BinSpec duration_bins(config.duration_bin_edges);

  const auto trend_it = by_condition.find(inputs.trend_condition);
  if (trend_it != by_condition.end()) {
    const auto& scores = trend_it->second;
    write_text_atomic(
        inputs.out_dir / "trend_rt60.csv",
        trend_to_csv(binned_trend(scores, TrendParameter::kRt60, rt60_bins,
                                  boot, config.wer_aggregate,
                                  config.workers)));
    write_text_atomic(
        inputs.out_dir / "trend_drr.csv",
        trend_to_csv(binned_trend(scores, TrendParameter::kDrr, drr_bins,
                                  boot, config.wer_aggregate,
                                  config.workers)));
    write_text_atomic(
        inputs.out_dir / "trend_duration.csv",
        trend_to_csv(binned_trend(scores, TrendParameter::kDuration,
                                  duration_bins, boot, config.wer_aggregate,
                                  config.workers)));

    const WerHeatmapGrid grid =
        wer_heatmap(scores, rt60_bins, drr_bins, config.wer_aggregate);
    std::string heatmap_csv = "rt60_lo,rt60_hi,drr_lo,drr_hi,n,wer\n";
    for (std::size_t i = 0; i < rt60_bins.bin_count(); ++i) {
      for (std::size_t j = 0; j < drr_bins.bin_count(); ++j) {
        const HeatmapCell& cell = grid.cells[i][j];
        heatmap_csv += csv_join(
            {format_double(rt60_bins.lower(i)),
             format_double(rt60_bins.upper(i)),
             format_double(drr_bins.lower(j)),
             format_double(drr_bins.upper(j)), std::to_string(cell.n),
             format_double(cell.wer)});
        heatmap_csv += '\n';
      }
    }
    write_text_atomic(inputs.out_dir / "wer_heatmap.csv", heatmap_csv);

    const auto ranked =
        hardest_utterances(scores, static_cast<std::size_t>(config.hardest_k));
    std::string hardest_csv = "utterance_id,wer,rt60_s,drr_db,ref_text,hyp_text\n";
    for (const ScoredUtterance& s : ranked) {
      hardest_csv += csv_join({s.utterance_id, format_double(s.wer),
                               format_double(s.rt60_s),
                               format_double(s.drr_db), s.ref_text,
                               s.hyp_text});
      hardest_csv += '\n';
    }
    write_text_atomic(inputs.out_dir /
                          ("hardest_utterances_top" +
                           std::to_string(config.hardest_k) + ".csv"),
                      hardest_csv);
  }

  if (!inputs.metadata_csv.empty()) {
    const std::vector<FileRecord> records = read_metadata(inputs.metadata_csv);
    const CorpusSummary corpus = summarize(records);
    json stats;
    stats["total_files"] = corpus.total_files;
    stats["total_hours"] = corpus.total_hours;
    stats["duration_s"] = field_stats_to_json(corpus.duration_s);
    stats["rt60_s"] = field_stats_to_json(corpus.rt60_s);
    stats["drr_db"] = field_stats_to_json(corpus.drr_db);
    write_text_atomic(inputs.out_dir / "corpus_stats.json",
                      stats.dump(2) + "\n");

    const CoverageGrid grid = coverage_counts(records, rt60_bins, drr_bins);
    std::string coverage_csv = "rt60_lo,rt60_hi,drr_lo,drr_hi,n\n";
    for (std::size_t i = 0; i < rt60_bins.bin_count(); ++i) {
      for (std::size_t j = 0; j < drr_bins.bin_count(); ++j) {
        coverage_csv += csv_join({format_double(rt60_bins.lower(i)),
                                  format_double(rt60_bins.upper(i)),
                                  format_double(drr_bins.lower(j)),
                                  format_double(drr_bins.upper(j)),
                                  std::to_string(grid.counts[i][j])});
        coverage_csv += '\n';
      }
    }
    coverage_csv += csv_join({"NA", "NA", "NA", "NA",
                              std::to_string(grid.outside)});
    coverage_csv += '\n';
    write_text_atomic(inputs.out_dir / "coverage.csv", coverage_csv);
  }

  write_text_atomic(inputs.out_dir / "summary.json", summary.dump(2) + "\n");
  write_resolved_config(config, inputs.out_dir);
  std::cerr << "analyze: " << by_condition.size() << " conditions\n";
  return {};
}

CommandStatus cmd_rebuild_all(const RebuildAllInputs& inputs,
                              const PipelineConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(inputs.out_dir, ec);
  if (!std::filesystem::is_directory(inputs.out_dir)) {
    throw IoFailure("cannot create " + inputs.out_dir.string());
  }

  CommandStatus worst;
  auto merge = [&worst](const CommandStatus& s) {
    worst.per_file_failures += s.per_file_failures;
    worst.exit_code = std::max(worst.exit_code, s.exit_code);
  };

  merge(cmd_metrics(inputs.rir_dir, inputs.out_dir / "rir_metrics.csv",
                    config));
  merge(cmd_build(inputs.clean_dir, inputs.manifest, inputs.rir_dir,
                  inputs.out_dir, config));
  merge(cmd_split(inputs.out_dir / "metadata.csv", config));

  const bool can_score = !inputs.refs_tsv.empty() &&
                         !inputs.hyps_clean_tsv.empty() &&
                         !inputs.hyps_reverb_tsv.empty();
  if (!can_score) {
    std::cerr << "rebuild-all: corpus ready; supply --refs/--hyps-clean/"
                 "--hyps-reverb to score and analyze\n";
    return worst;
  }

  merge(cmd_score(inputs.refs_tsv, inputs.hyps_clean_tsv, "clean",
                  inputs.out_dir / "scores_clean.csv",
                  inputs.out_dir / "metadata.csv", config));
  merge(cmd_score(inputs.refs_tsv, inputs.hyps_reverb_tsv, "reverb",
                  inputs.out_dir / "scores_reverb.csv",
                  inputs.out_dir / "metadata.csv", config));

  AnalyzeInputs analyze;
  analyze.scores_csvs = {inputs.out_dir / "scores_clean.csv",
                         inputs.out_dir / "scores_reverb.csv"};
  analyze.metadata_csv = inputs.out_dir / "metadata.csv";
  analyze.out_dir = inputs.out_dir / "analysis";
  merge(cmd_analyze(analyze, config));
  return worst;
}

}  // namespace reverbkit
