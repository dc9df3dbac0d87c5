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

#ifndef CITEVAL_SCORING_H_
#define CITEVAL_SCORING_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace citeval {

// Identifies one scored (statement, chunk) unit independent of the metric.
// Citation-level tables use chunk_index 0 for the whole citation.
struct PairKey {
  std::string statement_id;
  std::string citation_id;
  std::size_t chunk_index = 0;

  auto operator<=>(const PairKey&) const = default;
  bool operator==(const PairKey&) const = default;
};

std::string to_string(const PairKey& key);

struct MetricScore {
  std::string metric_name;
  PairKey key;
  double score = 0.0;

  bool operator==(const MetricScore&) const = default;
};

enum class Granularity { kChunk, kCitation };

// Metric scores keyed by (metric, statement, chunk). Entries iterate in key
// order, so every traversal is deterministic.
class ScoreTable {
 public:
  explicit ScoreTable(Granularity granularity = Granularity::kChunk) : granularity_(granularity) {}

  // Throws std::invalid_argument on a non-finite score or a duplicate key.
  void insert(std::string_view metric, PairKey key, double score);

  std::optional<double> find(std::string_view metric, const PairKey& key) const;

  const std::set<std::string>& metric_names() const { return metric_names_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  Granularity granularity() const { return granularity_; }

  // All entries ordered by metric name, then key.
  std::vector<MetricScore> entries() const;
  // Scores of one metric; empty map for an unknown metric.
  const std::map<PairKey, double>& scores(std::string_view metric) const;

  bool operator==(const ScoreTable&) const = default;

 private:
  Granularity granularity_;
  std::map<std::string, std::map<PairKey, double>, std::less<>> by_metric_;
  std::set<std::string> metric_names_;
};

// Built-in lexical baselines. Both are bounded in [0, 1].
// F1 over token multisets; 0 when either side has no tokens.
double token_f1(std::string_view statement_text, std::string_view chunk_text);
// Set Jaccard, identical to citeval::jaccard.
double jaccard_metric(std::string_view statement_text, std::string_view chunk_text);

using BaselineFn = double (*)(std::string_view, std::string_view);
// Looks up "token_f1" or "jaccard"; nullopt for anything else.
std::optional<BaselineFn> find_baseline(std::string_view name);
std::vector<std::string> baseline_names();

struct Coverage {
  std::vector<PairKey> missing;  // expected but absent, per metric
  std::vector<PairKey> extra;    // present but not expected, per metric
  std::string metric;
};

struct LoadedScores {
  ScoreTable table;
  // One entry per metric in the table, filled when expected pairs were given.
  std::vector<Coverage> coverage;
};

// Score file: one JSON object per line {metric, statement_id, citation_id,
// chunk_index, score}. Throws DataError "non-finite score at line N" for
// NaN/infinite values (including the strings "NaN"/"Infinity") and on
// duplicate keys.
LoadedScores load_scores(std::istream& in,
                         const std::optional<std::set<PairKey>>& expected = std::nullopt);
LoadedScores load_scores(const std::filesystem::path& path,
                         const std::optional<std::set<PairKey>>& expected = std::nullopt);

// Writes entries in table order; doubles use shortest round-trip form.
void write_scores(const ScoreTable& table, std::ostream& out);

enum class AggregationStrategy { kMax, kMean };

// Throws std::invalid_argument naming the unknown strategy.
AggregationStrategy parse_aggregation_strategy(std::string_view name);
std::string_view to_string(AggregationStrategy strategy);

// Collapses chunk scores into one score per (metric, statement, citation),
// stored under chunk_index 0 in a citation-granularity table.
ScoreTable aggregate_to_citation(const ScoreTable& table,
                                 AggregationStrategy strategy = AggregationStrategy::kMax);

}  // namespace citeval

#endif  // CITEVAL_SCORING_H_
