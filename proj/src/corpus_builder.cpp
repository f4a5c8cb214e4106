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

#include "reverbkit/corpus_builder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "reverbkit/acoustics.hpp"
#include "reverbkit/convolution.hpp"
#include "reverbkit/csv.hpp"
#include "reverbkit/parallel.hpp"
#include "reverbkit/rng.hpp"
#include "reverbkit/wav_io.hpp"

#include "json.hpp"

namespace reverbkit {

namespace {

void check_unique_sorted(const std::vector<std::string>& ids,
                         const char* what) {
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] == ids[i - 1]) {
      throw DuplicateId(std::string("duplicate ") + what + ": " + ids[i]);
    }
  }
}

}  // namespace

PairingPlan plan_pairs(std::vector<std::string> utterance_ids,
                       std::vector<std::string> rir_ids,
                       const BuildConfig& config) {
  if (utterance_ids.empty()) throw EmptyPool("no utterances");
  if (rir_ids.empty()) throw EmptyPool("no RIRs");
  if (config.variants_per_utterance < 1) {
    throw InvalidParameter("variants_per_utterance must be >= 1");
  }
  // The plan is a function of the sorted id sets, never of listing order.
  std::sort(utterance_ids.begin(), utterance_ids.end());
  std::sort(rir_ids.begin(), rir_ids.end());
  check_unique_sorted(utterance_ids, "utterance id");
  check_unique_sorted(rir_ids, "rir id");

  const std::size_t pool = rir_ids.size();
  const std::size_t want =
      static_cast<std::size_t>(config.variants_per_utterance);

  PairingPlan plan;
  plan.entries.reserve(utterance_ids.size() * want);
  std::vector<std::size_t> indices(pool);
  for (const std::string& utt : utterance_ids) {
    SeededRng rng(derive_seed(config.sampling_seed, fnv1a_64(utt)));
    if (pool >= want) {
      // Partial Fisher-Yates: the first `want` slots become the draw
      // without replacement.
      std::iota(indices.begin(), indices.end(), 0);
      for (std::size_t k = 0; k < want; ++k) {
        const std::size_t j = k + rng.bounded(pool - k);
        std::swap(indices[k], indices[j]);
      }
      for (std::size_t k = 0; k < want; ++k) {
        plan.entries.push_back({utt, static_cast<int>(k),
                                rir_ids[indices[k]]});
      }
    } else {
      // Pool smaller than the request: draw with replacement.
      for (std::size_t k = 0; k < want; ++k) {
        plan.entries.push_back({utt, static_cast<int>(k),
                                rir_ids[rng.bounded(pool)]});
      }
    }
  }
  return plan;
}

ClipCheck check_clipping(const AudioBuffer& buffer) {
  if (buffer.empty()) return ClipCheck::kOk;
  return peak_abs(buffer) > 1.0 ? ClipCheck::kClipped : ClipCheck::kOk;
}

AudioBuffer normalize_rms(const AudioBuffer& buffer, double target_db) {
  const double current = rms_db(buffer);
  if (!std::isfinite(current)) {
    throw ZeroSignal("normalize_rms: zero-RMS input");
  }
  return apply_gain(buffer, std::pow(10.0, (target_db - current) / 20.0));
}

AudioBuffer add_noise(const AudioBuffer& buffer, const SnrRange& snr_range_db,
                      uint64_t seed, std::string_view file_key) {
  if (snr_range_db.lo_db > snr_range_db.hi_db) {
    throw InvalidParameter("noise SNR range is inverted");
  }
  const double signal_rms_db = rms_db(buffer);
  if (!std::isfinite(signal_rms_db)) {
    throw ZeroSignal("add_noise: zero-RMS input");
  }
  SeededRng rng(derive_seed(seed, fnv1a_64(file_key)));
  const double snr_db = rng.uniform(snr_range_db.lo_db, snr_range_db.hi_db);

  std::vector<double> noise(buffer.size());
  double sum_sq = 0.0;
  for (double& v : noise) {
    v = rng.gaussian();
    sum_sq += v * v;
  }
  const double noise_rms = std::sqrt(sum_sq / double(noise.size()));
  if (noise_rms == 0.0) throw ZeroSignal("add_noise: degenerate noise draw");
  // Scale the generated sequence to the exact RMS the drawn SNR requires.
  const double signal_rms = std::pow(10.0, signal_rms_db / 20.0);
  const double target_rms = signal_rms * std::pow(10.0, -snr_db / 20.0);
  const double gain = target_rms / noise_rms;

  AudioBuffer out = buffer;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.samples[i] += noise[i] * gain;
  }
  return out;
}

std::string output_file_name(const PairEntry& entry) {
  return entry.utterance_id + "__rir" + entry.rir_id + "__v" +
         std::to_string(entry.variant_index) + ".wav";
}

bool parse_file_key(std::string_view stem, std::string* utterance_id,
                    std::string* rir_id, int* variant_index) {
  const std::size_t v_pos = stem.rfind("__v");
  if (v_pos == std::string_view::npos) return false;
  const std::size_t rir_pos = stem.rfind("__rir", v_pos);
  if (rir_pos == std::string_view::npos || rir_pos == 0) return false;
  const std::string_view v_str = stem.substr(v_pos + 3);
  if (v_str.empty()) return false;
  int v = 0;
  for (char c : v_str) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  *utterance_id = std::string(stem.substr(0, rir_pos));
  *rir_id = std::string(stem.substr(rir_pos + 5, v_pos - (rir_pos + 5)));
  *variant_index = v;
  return !utterance_id->empty() && !rir_id->empty();
}

std::vector<UtteranceInfo> scan_utterance_dir(
    const std::filesystem::path& clean_dir) {
  if (!std::filesystem::is_directory(clean_dir)) {
    throw IoFailure("not a directory: " + clean_dir.string());
  }
  std::vector<UtteranceInfo> utterances;
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(clean_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".wav") {
      continue;
    }
    UtteranceInfo info;
    info.utterance_id = entry.path().stem().string();
    info.clean_path = entry.path();
    info.speaker_id = speaker_from_utterance_id(info.utterance_id);
    utterances.push_back(std::move(info));
  }
  std::sort(utterances.begin(), utterances.end(),
            [](const UtteranceInfo& a, const UtteranceInfo& b) {
              return a.utterance_id < b.utterance_id;
            });
  for (std::size_t i = 1; i < utterances.size(); ++i) {
    if (utterances[i].utterance_id == utterances[i - 1].utterance_id) {
      throw DuplicateId("duplicate utterance id: " +
                        utterances[i].utterance_id);
    }
  }
  return utterances;
}

std::vector<UtteranceInfo> read_utterance_manifest(
    const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + manifest_path.string());
  std::vector<UtteranceInfo> utterances;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
      const std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) break;
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    fields.push_back(line.substr(start));
    if (fields.size() < 2 || fields[0].empty()) {
      throw SchemaMismatch("bad manifest line: " + line);
    }
    UtteranceInfo info;
    info.utterance_id = fields[0];
    info.clean_path = fields[1];
    info.speaker_id = fields.size() > 2 && !fields[2].empty()
                          ? fields[2]
                          : speaker_from_utterance_id(info.utterance_id);
    if (fields.size() > 3) info.text = fields[3];
    utterances.push_back(std::move(info));
  }
  std::sort(utterances.begin(), utterances.end(),
            [](const UtteranceInfo& a, const UtteranceInfo& b) {
              return a.utterance_id < b.utterance_id;
            });
  for (std::size_t i = 1; i < utterances.size(); ++i) {
    if (utterances[i].utterance_id == utterances[i - 1].utterance_id) {
      throw DuplicateId("duplicate utterance id: " +
                        utterances[i].utterance_id);
    }
  }
  return utterances;
}

std::vector<std::pair<std::string, std::filesystem::path>> scan_rir_dir(
    const std::filesystem::path& rir_dir) {
  if (!std::filesystem::is_directory(rir_dir)) {
    throw IoFailure("not a directory: " + rir_dir.string());
  }
  std::vector<std::pair<std::string, std::filesystem::path>> rirs;
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(rir_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".wav") {
      continue;
    }
    rirs.emplace_back(entry.path().stem().string(), entry.path());
  }
  std::sort(rirs.begin(), rirs.end());
  for (std::size_t i = 1; i < rirs.size(); ++i) {
    if (rirs[i].first == rirs[i - 1].first) {
      throw DuplicateId("duplicate rir id: " + rirs[i].first);
    }
  }
  return rirs;
}

namespace {

// Per-RIR state shared read-only by all workers.
struct RirEntry {
  AudioBuffer buffer;
  AcousticMetrics metrics;
  std::string failure;  // non-empty marks the RIR unusable
};

struct TaskOutput {
  std::vector<FileRecord> records;
  std::vector<Exclusion> exclusions;
  std::size_t written = 0;
  std::size_t clipped = 0;
  std::size_t metadata_failures = 0;
};

void sort_exclusions(std::vector<Exclusion>& exclusions) {
  std::sort(exclusions.begin(), exclusions.end(),
            [](const Exclusion& a, const Exclusion& b) {
              return std::tie(a.utterance_id, a.rir_id, a.reason) <
                     std::tie(b.utterance_id, b.rir_id, b.reason);
            });
}

}  // namespace

BuildResult build_corpus(const std::vector<UtteranceInfo>& utterances,
                         const std::filesystem::path& rir_dir,
                         const std::filesystem::path& out_dir,
                         const BuildConfig& config, int workers) {
  const auto rirs = scan_rir_dir(rir_dir);
  std::vector<std::string> utterance_ids;
  utterance_ids.reserve(utterances.size());
  for (const auto& u : utterances) utterance_ids.push_back(u.utterance_id);
  std::vector<std::string> rir_ids;
  rir_ids.reserve(rirs.size());
  for (const auto& [id, path] : rirs) rir_ids.push_back(id);

  const PairingPlan plan = plan_pairs(utterance_ids, rir_ids, config);

  const std::filesystem::path wav_dir = out_dir / "wav";
  std::error_code ec;
  std::filesystem::create_directories(wav_dir, ec);
  if (ec || !std::filesystem::is_directory(wav_dir)) {
    throw IoFailure("cannot create output directory " + wav_dir.string());
  }

  // Load every RIR once and annotate it; failures taint all pairings that
  // use the RIR but never abort the batch.
  std::map<std::string, RirEntry> rir_table;
  for (const auto& [id, path] : rirs) rir_table[id];
  parallel_for(rirs.size(), workers, [&](std::size_t i) {
    const auto& [id, path] = rirs[i];
    RirEntry& entry = rir_table[id];
    try {
      entry.buffer = read_wav(path);
      entry.metrics = compute_rir_metrics(entry.buffer);
    } catch (const ZeroEnergy&) {
      entry.failure = "zero_energy_rir";
    } catch (const Error& e) {
      entry.failure = std::string("unreadable_rir: ") + e.what();
    }
  });

  // Group plan entries per utterance; each group is one independent task.
  std::map<std::string, const UtteranceInfo*> info_by_id;
  for (const auto& u : utterances) info_by_id[u.utterance_id] = &u;
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end)
  for (std::size_t i = 0; i < plan.entries.size();) {
    std::size_t j = i;
    while (j < plan.entries.size() &&
           plan.entries[j].utterance_id == plan.entries[i].utterance_id) {
      ++j;
    }
    groups.emplace_back(i, j);
    i = j;
  }

  std::vector<TaskOutput> outputs(groups.size());
  parallel_for(groups.size(), workers, [&](std::size_t g) {
    const auto [begin, end] = groups[g];
    TaskOutput& out = outputs[g];
    const UtteranceInfo& info = *info_by_id.at(plan.entries[begin].utterance_id);

    AudioBuffer clean;
    std::string clean_failure;
    try {
      clean = read_wav(info.clean_path);
      if (clean.empty()) clean_failure = "empty_clean";
      if (clean.sample_rate_hz != config.output_rate_hz) {
        clean_failure = "rate_mismatch_clean";
      }
    } catch (const Error& e) {
      clean_failure = std::string("unreadable_clean: ") + e.what();
    }

    for (std::size_t i = begin; i < end; ++i) {
      const PairEntry& pair = plan.entries[i];
      if (!clean_failure.empty()) {
        out.exclusions.push_back({pair.rir_id, pair.utterance_id,
                                  clean_failure});
        ++out.metadata_failures;
        continue;
      }
      const RirEntry& rir = rir_table.at(pair.rir_id);
      if (!rir.failure.empty()) {
        out.exclusions.push_back({pair.rir_id, pair.utterance_id,
                                  rir.failure});
        ++out.metadata_failures;
        continue;
      }
      if (rir.buffer.sample_rate_hz != clean.sample_rate_hz) {
        out.exclusions.push_back({pair.rir_id, pair.utterance_id,
                                  "rate_mismatch"});
        ++out.metadata_failures;
        continue;
      }

      AudioBuffer reverb = convolve(clean, rir.buffer);
      const std::string file_name = output_file_name(pair);
      try {
        if (config.normalize_target_rms_db.has_value()) {
          reverb = normalize_rms(reverb, *config.normalize_target_rms_db);
        }
        if (config.noise_snr_range_db.has_value()) {
          reverb = add_noise(reverb, *config.noise_snr_range_db,
                             config.noise_seed, file_name);
        }
      } catch (const ZeroSignal&) {
        out.exclusions.push_back({pair.rir_id, pair.utterance_id,
                                  "zero_signal"});
        ++out.metadata_failures;
        continue;
      }

      if (check_clipping(reverb) == ClipCheck::kClipped) {
        out.exclusions.push_back({pair.rir_id, pair.utterance_id,
                                  "clipping"});
        ++out.clipped;
        continue;
      }

      write_wav(reverb, wav_dir / file_name);
      ++out.written;

      FileRecord record;
      record.utterance_id = pair.utterance_id;
      record.speaker_id = info.speaker_id;
      record.variant_index = pair.variant_index;
      record.clean_path = info.clean_path.string();
      // Relative to out_dir so identical builds in different locations
      // produce identical metadata bytes.
      record.reverb_path = "wav/" + file_name;
      record.rir_id = pair.rir_id;
      record.duration_s = reverb.duration_s();
      record.rt60_s = rir.metrics.rt60_s;
      record.drr_db = rir.metrics.drr_db;
      record.c50_db = rir.metrics.c50_db;
      record.rms_db = rms_db(reverb);
      out.records.push_back(std::move(record));
    }
  });

  BuildResult result;
  result.report.planned = plan.entries.size();
  for (TaskOutput& out : outputs) {
    result.report.written += out.written;
    result.report.excluded_clipping += out.clipped;
    result.report.excluded_metadata += out.metadata_failures;
    std::move(out.records.begin(), out.records.end(),
              std::back_inserter(result.records));
    std::move(out.exclusions.begin(), out.exclusions.end(),
              std::back_inserter(result.exclusions));
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const FileRecord& a, const FileRecord& b) {
              return std::tie(a.utterance_id, a.variant_index) <
                     std::tie(b.utterance_id, b.variant_index);
            });
  sort_exclusions(result.exclusions);

  write_metadata(result.records, out_dir / "metadata.csv");

  std::string exclusions_csv = "rir_id,utterance_id,reason\n";
  for (const Exclusion& e : result.exclusions) {
    exclusions_csv += csv_join({e.rir_id, e.utterance_id, e.reason});
    exclusions_csv += '\n';
  }
  write_text_atomic(out_dir / "exclusions.csv", exclusions_csv);

  nlohmann::json report;
  report["planned"] = result.report.planned;
  report["written"] = result.report.written;
  report["excluded_clipping"] = result.report.excluded_clipping;
  report["excluded_metadata"] = result.report.excluded_metadata;
  write_text_atomic(out_dir / "build_report.json", report.dump(2) + "\n");

  return result;
}

}  // namespace reverbkit
