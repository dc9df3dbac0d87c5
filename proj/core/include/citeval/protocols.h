/*
 * Copyright 2026 The citeval Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CITEVAL_PROTOCOLS_H_
#define CITEVAL_PROTOCOLS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citeval/chunker.h"
#include "citeval/corpus.h"
#include "citeval/errors.h"
#include "citeval/scoring.h"
#include "citeval/stats.h"
#include "citeval/support_level.h"

namespace citeval {

// Numeric value each support level takes in correlation analysis.
struct LevelValues {
  double none = 0.0;
  double partial = 1.0;
  double full = 2.0;

  double operator()(SupportLevel level) const;
  bool operator==(const LevelValues&) const = default;
};

// Unit of evaluation: individual chunks, or whole citations with chunk
// scores aggregated by max or mean.
enum class AggregationLevel { kChunk, kCitationMax, kCitationMean };

std::string_view to_string(AggregationLevel level);
// Accepts "chunk_level", "citation_max", "citation_mean".
AggregationLevel parse_aggregation_level(std::string_view name);

enum class PoolPolicy { kCitedDocs, kCitedDocsPlusDistractors };

std::string_view to_string(PoolPolicy policy);
// Accepts "cited_docs", "cited_docs_plus_distractors".
PoolPolicy parse_pool_policy(std::string_view name);

struct EvaluationConfig {
  LevelValues level_values;
  std::vector<std::size_t> ndcg_cutoffs{5, 10, 20};
  stats::Gain gain = stats::Gain::kExponential;
  stats::KendallVariant kendall_variant = stats::KendallVariant::kTauB;
  double jaccard_threshold = kDefaultJaccardThreshold;
  std::size_t chunk_max_words = kDefaultMaxWords;
  AggregationLevel aggregation = AggregationLevel::kChunk;
  PoolPolicy pool_policy = PoolPolicy::kCitedDocs;
  // Distractor chunks appended per statement under kCitedDocsPlusDistractors.
  std::size_t distractors = 0;
  std::uint64_t seed = 0;
  // Count statements without any relevant pool item as NDCG 0 instead of
  // excluding them from the means.
  bool include_zero_ideal = false;

  bool operator==(const EvaluationConfig&) const = default;
};

// Throws std::invalid_argument when cutoffs are not positive and strictly
// increasing, level values are not strictly increasing in support order, or
// the threshold lies outside [0, 1].
void validate_config(const EvaluationConfig& config);

// Canonical JSON (sorted keys) and its SHA-256.
std::string config_to_json(const EvaluationConfig& config);
EvaluationConfig config_from_json(std::string_view text);
std::string config_fingerprint(const EvaluationConfig& config);

struct ClassificationSetting {
  std::string_view name;
  SupportLevel positive;
  SupportLevel negative;
};

inline constexpr std::array<ClassificationSetting, 3> kClassificationSettings = {{
    {"FS_vs_NS", SupportLevel::kFull, SupportLevel::kNone},
    {"FS_vs_PS", SupportLevel::kFull, SupportLevel::kPartial},
    {"PS_vs_NS", SupportLevel::kPartial, SupportLevel::kNone},
}};

struct CorrelationResult {
  std::optional<double> pearson;
  std::optional<double> spearman;
  std::optional<double> kendall;
  std::size_t count = 0;

  bool operator==(const CorrelationResult&) const = default;
};

struct SettingResult {
  std::string setting;
  std::optional<double> auc;  // undefined when either class is empty
  std::size_t positives = 0;
  std::size_t negatives = 0;

  bool operator==(const SettingResult&) const = default;
};

struct ClassificationResult {
  std::vector<SettingResult> settings;
  // Unweighted mean of the setting AUCs; undefined if any setting is.
  std::optional<double> overall;

  bool operator==(const ClassificationResult&) const = default;
};

struct StatementNdcg {
  std::string statement_id;
  std::size_t pool_size = 0;
  bool zero_ideal = false;
  std::vector<double> ndcg;  // one value per cutoff

  bool operator==(const StatementNdcg&) const = default;
};

struct RetrievalResult {
  std::vector<std::size_t> cutoffs;
  // Mean NDCG per cutoff; undefined when no statement was evaluated.
  std::vector<std::optional<double>> mean_ndcg;
  std::vector<StatementNdcg> per_statement;  // sorted by statement id
  std::size_t evaluated = 0;
  std::size_t zero_ideal_excluded = 0;
  std::size_t empty_pool_excluded = 0;

  bool operator==(const RetrievalResult&) const = default;
};

struct ProtocolResult {
  std::string metric_name;
  std::optional<CorrelationResult> correlation;
  std::optional<ClassificationResult> classification;
  std::optional<RetrievalResult> retrieval;
  std::string config_fingerprint;

  bool operator==(const ProtocolResult&) const = default;
};

// Raised when evaluation units lack a score for the metric. The message
// lists up to 10 missing keys.
class MissingScoresError : public DataError {
 public:
  MissingScoresError(std::string metric, std::vector<PairKey> missing);

  const std::string& metric() const { return metric_; }
  const std::vector<PairKey>& missing() const { return missing_; }

 private:
  std::string metric_;
  std::vector<PairKey> missing_;
};

// Unweighted mean; nullopt if the input is empty or any value is undefined.
std::optional<double> macro_average(std::span<const std::optional<double>> values);

// Key under which a labeled unit is scored.
PairKey key_of(const LabeledChunk& unit);

// Collapses chunk-level labeled chunks into one unit per (statement,
// citation) with chunk index 0, labeled with the highest chunk label.
std::vector<LabeledChunk> to_citation_units(std::span<const LabeledChunk> chunks);

// Pearson/Spearman/Kendall between level values of the labels and scores.
// Throws MissingScoresError, or std::invalid_argument with fewer than 2 units.
CorrelationResult run_correlation(std::span<const LabeledChunk> labeled, const ScoreTable& table,
                                  std::string_view metric, const EvaluationConfig& config);

// One-vs-one ROC-AUC for the three settings plus their macro average.
ClassificationResult run_classification(std::span<const LabeledChunk> labeled,
                                        const ScoreTable& table, std::string_view metric,
                                        const EvaluationConfig& config);

struct PoolItem {
  std::string citation_id;
  std::size_t chunk_index = 0;
  int relevance = 0;

  bool operator==(const PoolItem&) const = default;
};

struct StatementPool {
  std::string statement_id;
  std::vector<PoolItem> items;

  bool operator==(const StatementPool&) const = default;
};

struct RetrievalPools {
  std::vector<StatementPool> pools;  // corpus statement order, non-empty only
  std::size_t empty_pools = 0;

  bool operator==(const RetrievalPools&) const = default;
};

// Candidate pool per statement: every unit of every document cited within
// the statement's response, with relevance taken from the statement's own
// labels (0 where the statement has no label). The distractor policy adds
// config.distractors units sampled without replacement from documents not
// cited by the response, all with relevance 0.
RetrievalPools build_retrieval_pools(const Corpus& corpus, std::span<const LabeledChunk> units,
                                     const EvaluationConfig& config);

// Ranks each pool by (score desc, citation_id asc, chunk_index asc) and
// reports NDCG at every cutoff.
RetrievalResult run_retrieval(const RetrievalPools& pools, const ScoreTable& table,
                              std::string_view metric, const EvaluationConfig& config);

struct ProtocolSelection {
  bool correlation = true;
  bool classification = true;
  bool retrieval = true;
};

// Accepts "correlation", "classification", "retrieval" or "all".
ProtocolSelection parse_protocol_selection(std::string_view name);

// Chunk-level keys that must be scored for evaluate() to succeed under the
// config: every labeled chunk plus every pooled unit (all chunks of a pooled
// citation when evaluating at citation level).
std::set<PairKey> required_score_keys(const Corpus& corpus, std::span<const LabeledChunk> chunks,
                                      const EvaluationConfig& config);

// Runs the selected protocols for each metric over chunk-level inputs,
// aggregating to citations first when the config asks for it. Results are
// sorted by metric name.
std::vector<ProtocolResult> evaluate(const Corpus& corpus, std::span<const LabeledChunk> chunks,
                                     const ScoreTable& chunk_scores,
                                     std::span<const std::string> metrics,
                                     ProtocolSelection selection, const EvaluationConfig& config);

}  // namespace citeval

#endif  // CITEVAL_PROTOCOLS_H_
