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

#include "reverbkit/eval_stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "reverbkit/csv.hpp"
#include "reverbkit/parallel.hpp"
#include "reverbkit/rng.hpp"

namespace reverbkit {

WerCounts wer(const std::vector<std::string>& ref_tokens,
              const std::vector<std::string>& hyp_tokens) {
  if (ref_tokens.empty()) throw EmptyReference("empty reference");
  const std::size_t n = ref_tokens.size();
  const std::size_t m = hyp_tokens.size();
  // Two-row Levenshtein over tokens, unit costs.
  std::vector<uint32_t> prev(m + 1), curr(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    curr[0] = static_cast<uint32_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const uint32_t sub =
          prev[j - 1] + (ref_tokens[i - 1] == hyp_tokens[j - 1] ? 0 : 1);
      curr[j] = std::min({sub, prev[j] + 1, curr[j - 1] + 1});
    }
    std::swap(prev, curr);
  }
  WerCounts counts;
  counts.edit_errors = prev[m];
  counts.ref_words = static_cast<uint32_t>(n);
  counts.wer = static_cast<double>(counts.edit_errors) / counts.ref_words;
  return counts;
}

double corpus_wer(std::span<const ScoredUtterance> scores,
                  WerAggregate aggregate) {
  if (scores.empty()) throw EmptySet("corpus_wer: no scores");
  if (aggregate == WerAggregate::kPooled) {
    uint64_t errors = 0, words = 0;
    for (const auto& s : scores) {
      errors += s.edit_errors;
      words += s.ref_words;
    }
    return static_cast<double>(errors) / static_cast<double>(words);
  }
  double sum = 0.0;
  for (const auto& s : scores) sum += s.wer;
  return sum / static_cast<double>(scores.size());
}

namespace {

// Linearly interpolated order statistic of an ascending-sorted sample.
double percentile_sorted(const std::vector<double>& sorted, double pct) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * pct / 100.0;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

Interval bootstrap_ci(
    std::size_t n_items,
    const std::function<double(std::span<const uint32_t>)>& statistic,
    const BootstrapConfig& config, int workers) {
  if (n_items == 0) throw EmptySet("bootstrap_ci: no items");
  if (config.resamples < 1) {
    throw InvalidParameter("bootstrap resamples must be >= 1");
  }

  std::vector<uint32_t> identity(n_items);
  for (std::size_t i = 0; i < n_items; ++i) {
    identity[i] = static_cast<uint32_t>(i);
  }
  Interval result;
  result.point = statistic(identity);

  // Each resample draws from its own (seed, index)-derived stream, so the
  // percentile inputs are the same for any worker count.
  std::vector<double> stats(static_cast<std::size_t>(config.resamples));
  parallel_for(stats.size(), workers, [&](std::size_t b) {
    SeededRng rng(derive_seed(config.seed, b));
    std::vector<uint32_t> indices(n_items);
    for (std::size_t i = 0; i < n_items; ++i) {
      indices[i] = static_cast<uint32_t>(rng.bounded(n_items));
    }
    stats[b] = statistic(indices);
  });

  std::sort(stats.begin(), stats.end());
  result.lo = percentile_sorted(stats, config.lo_percentile);
  result.hi = percentile_sorted(stats, config.hi_percentile);
  return result;
}

namespace {

double resampled_corpus_wer(std::span<const ScoredUtterance> scores,
                            std::span<const uint32_t> indices,
                            WerAggregate aggregate) {
  if (aggregate == WerAggregate::kPooled) {
    uint64_t errors = 0, words = 0;
    for (uint32_t i : indices) {
      errors += scores[i].edit_errors;
      words += scores[i].ref_words;
    }
    return static_cast<double>(errors) / static_cast<double>(words);
  }
  double sum = 0.0;
  for (uint32_t i : indices) sum += scores[i].wer;
  return sum / static_cast<double>(indices.size());
}

}  // namespace

Interval bootstrap_corpus_wer(std::span<const ScoredUtterance> scores,
                              const BootstrapConfig& config,
                              WerAggregate aggregate, int workers) {
  if (scores.empty()) throw EmptySet("bootstrap_corpus_wer: no scores");
  return bootstrap_ci(
      scores.size(),
      [&](std::span<const uint32_t> idx) {
        return resampled_corpus_wer(scores, idx, aggregate);
      },
      config, workers);
}

PairedSummary paired_delta(std::span<const ScoredUtterance> clean_scores,
                           std::span<const ScoredUtterance> reverb_scores) {
  std::map<std::string, const ScoredUtterance*> clean_by_id;
  for (const auto& s : clean_scores) clean_by_id[s.utterance_id] = &s;
  std::map<std::string, const ScoredUtterance*> reverb_by_id;
  for (const auto& s : reverb_scores) reverb_by_id[s.utterance_id] = &s;
  for (const auto& [id, unused] : clean_by_id) {
    if (!reverb_by_id.count(id)) {
      throw UnpairedUtterance("no reverberant score for " + id);
    }
  }
  for (const auto& [id, unused] : reverb_by_id) {
    if (!clean_by_id.count(id)) {
      throw UnpairedUtterance("no clean score for " + id);
    }
  }

  PairedSummary summary;
  double delta_sum = 0.0;
  for (const auto& [id, clean] : clean_by_id) {
    const ScoredUtterance* reverb = reverb_by_id.at(id);
    PairedDelta d;
    d.utterance_id = id;
    d.wer_clean = clean->wer;
    d.wer_reverb = reverb->wer;
    d.delta = reverb->wer - clean->wer;
    delta_sum += d.delta;
    summary.deltas.push_back(std::move(d));
  }
  summary.mean_delta = delta_sum / static_cast<double>(summary.deltas.size());
  const double pooled_clean = corpus_wer(clean_scores, WerAggregate::kPooled);
  const double pooled_reverb =
      corpus_wer(reverb_scores, WerAggregate::kPooled);
  summary.relative_increase = pooled_reverb / pooled_clean - 1.0;
  return summary;
}

Interval bootstrap_mean_paired_delta(const PairedSummary& paired,
                                     const BootstrapConfig& config,
                                     int workers) {
  if (paired.deltas.empty()) throw EmptySet("no paired deltas");
  const auto& deltas = paired.deltas;
  return bootstrap_ci(
      deltas.size(),
      [&](std::span<const uint32_t> idx) {
        double sum = 0.0;
        for (uint32_t i : idx) sum += deltas[i].delta;
        return sum / static_cast<double>(idx.size());
      },
      config, workers);
}

namespace {

double trend_parameter(const ScoredUtterance& s, TrendParameter parameter) {
  switch (parameter) {
    case TrendParameter::kRt60:
      return s.rt60_s;
    case TrendParameter::kDrr:
      return s.drr_db;
    case TrendParameter::kDuration:
      return s.duration_s;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

TrendReport binned_trend(std::span<const ScoredUtterance> scores,
                         TrendParameter parameter, const BinSpec& bins,
                         const BootstrapConfig& config, WerAggregate aggregate,
                         int workers) {
  std::vector<std::vector<ScoredUtterance>> members(bins.bin_count());
  std::vector<ScoredUtterance> outside;
  for (const auto& s : scores) {
    const std::size_t i = bins.index_of(trend_parameter(s, parameter));
    if (i == BinSpec::npos) {
      outside.push_back(s);
    } else {
      members[i].push_back(s);
    }
  }

  TrendReport report;
  report.bins.resize(bins.bin_count());
  for (std::size_t i = 0; i < bins.bin_count(); ++i) {
    TrendBin& bin = report.bins[i];
    bin.lo_edge = bins.lower(i);
    bin.hi_edge = bins.upper(i);
    bin.n = members[i].size();
    if (bin.n == 0) continue;
    const Interval ci =
        bootstrap_corpus_wer(members[i], config, aggregate, workers);
    bin.wer = ci.point;
    bin.ci_lo = ci.lo;
    bin.ci_hi = ci.hi;
  }
  report.outside_n = outside.size();
  if (!outside.empty()) {
    report.outside_wer = corpus_wer(outside, aggregate);
  }
  return report;
}

WerHeatmapGrid wer_heatmap(std::span<const ScoredUtterance> scores,
                           const BinSpec& rt60_bins, const BinSpec& drr_bins,
                           WerAggregate aggregate) {
  std::vector<std::vector<std::vector<ScoredUtterance>>> members(
      rt60_bins.bin_count(),
      std::vector<std::vector<ScoredUtterance>>(drr_bins.bin_count()));
  WerHeatmapGrid grid;
  grid.cells.assign(rt60_bins.bin_count(),
                    std::vector<HeatmapCell>(drr_bins.bin_count()));
  for (const auto& s : scores) {
    const std::size_t i = rt60_bins.index_of(s.rt60_s);
    const std::size_t j = drr_bins.index_of(s.drr_db);
    if (i == BinSpec::npos || j == BinSpec::npos) {
      ++grid.outside;
    } else {
      members[i][j].push_back(s);
    }
  }
  for (std::size_t i = 0; i < rt60_bins.bin_count(); ++i) {
    for (std::size_t j = 0; j < drr_bins.bin_count(); ++j) {
      HeatmapCell& cell = grid.cells[i][j];
      cell.n = members[i][j].size();
      if (cell.n > 0) cell.wer = corpus_wer(members[i][j], aggregate);
    }
  }
  return grid;
}

std::vector<ScoredUtterance> hardest_utterances(
    std::span<const ScoredUtterance> scores, std::size_t k) {
  if (scores.empty()) throw EmptySet("hardest_utterances: no scores");
  if (k < 1) throw InvalidParameter("hardest_utterances: k must be >= 1");
  std::vector<ScoredUtterance> ranked(scores.begin(), scores.end());
  std::sort(ranked.begin(), ranked.end(),
            [](const ScoredUtterance& a, const ScoredUtterance& b) {
              if (a.wer != b.wer) return a.wer > b.wer;
              return a.utterance_id < b.utterance_id;
            });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

std::vector<std::pair<std::string, std::string>> read_manifest_tsv(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::vector<std::pair<std::string, std::string>> entries;
  std::set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    const std::string id = tab == std::string::npos ? line
                                                    : line.substr(0, tab);
    const std::string text =
        tab == std::string::npos ? std::string() : line.substr(tab + 1);
    if (id.empty()) throw SchemaMismatch("manifest line without id");
    if (!seen.insert(id).second) {
      throw DuplicateId("duplicate manifest id: " + id);
    }
    entries.emplace_back(id, text);
  }
  return entries;
}

namespace {

const std::vector<std::string>& scores_columns() {
  static const std::vector<std::string> columns = {
      "utterance_id", "condition", "edit_errors", "ref_words",
      "wer",          "rt60_s",    "drr_db",      "duration_s",
      "ref_text",     "hyp_text"};
  return columns;
}

}  // namespace

void write_scores_csv(std::span<const ScoredUtterance> scores,
                      const std::filesystem::path& path) {
  std::string text = csv_join(scores_columns());
  text.push_back('\n');
  for (const auto& s : scores) {
    text.append(csv_join({s.utterance_id, s.condition,
                          std::to_string(s.edit_errors),
                          std::to_string(s.ref_words), format_double(s.wer),
                          format_double(s.rt60_s), format_double(s.drr_db),
                          format_double(s.duration_s), s.ref_text,
                          s.hyp_text}));
    text.push_back('\n');
  }
  write_text_atomic(path, text);
}

std::vector<ScoredUtterance> read_scores_csv(
    const std::filesystem::path& path) {
  const auto rows = read_csv(path);
  if (rows.empty() || rows[0] != scores_columns()) {
    throw SchemaMismatch("unexpected scores header in " + path.string());
  }
  std::vector<ScoredUtterance> scores;
  scores.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != scores_columns().size()) {
      throw SchemaMismatch("bad scores row in " + path.string());
    }
    ScoredUtterance s;
    s.utterance_id = row[0];
    s.condition = row[1];
    s.edit_errors = static_cast<uint32_t>(parse_double(row[2]));
    s.ref_words = static_cast<uint32_t>(parse_double(row[3]));
    if (s.ref_words == 0) {
      throw SchemaMismatch("ref_words must be >= 1 in " + path.string());
    }
    // Recomputed rather than trusted, so the invariant holds exactly.
    s.wer = static_cast<double>(s.edit_errors) / s.ref_words;
    s.rt60_s = parse_double(row[5]);
    s.drr_db = parse_double(row[6]);
    s.duration_s = parse_double(row[7]);
    s.ref_text = row[8];
    s.hyp_text = row[9];
    scores.push_back(std::move(s));
  }
  return scores;
}

}  // namespace reverbkit
