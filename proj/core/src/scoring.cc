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

#include "citeval/scoring.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <stdexcept>
#include <unordered_map>

#include "citeval/errors.h"
#include "citeval/text.h"
#include "json_util.h"

namespace citeval {
namespace {

using internal::json;
using internal::line_error;
using internal::require_field;
using internal::require_string;

const std::map<PairKey, double>& empty_scores() {
  static const std::map<PairKey, double> kEmpty;
  return kEmpty;
}

double parse_score(const json& value, std::size_t line) {
  if (value.is_number()) {
    double score = value.get<double>();
    if (!std::isfinite(score)) {
      throw DataError("non-finite score at line " + std::to_string(line));
    }
    return score;
  }
  if (value.is_string()) {
    // Some writers emit "NaN"/"Infinity" as strings; name them explicitly.
    const std::string text = value.get<std::string>();
    std::string lowered;
    for (char c : text)
      lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lowered == "nan" || lowered == "inf" || lowered == "-inf" || lowered == "infinity" ||
        lowered == "-infinity" || lowered == "+infinity") {
      throw DataError("non-finite score at line " + std::to_string(line));
    }
  }
  throw line_error(line, "field 'score' must be a number");
}

}  // namespace

std::string to_string(const PairKey& key) {
  return "(" + key.statement_id + ", " + key.citation_id + ", " + std::to_string(key.chunk_index) +
         ")";
}

void ScoreTable::insert(std::string_view metric, PairKey key, double score) {
  if (!std::isfinite(score)) {
    throw std::invalid_argument("non-finite score for " + std::string(metric) + " " +
                                to_string(key));
  }
  auto it = by_metric_.find(metric);
  if (it == by_metric_.end()) {
    it = by_metric_.emplace(std::string(metric), std::map<PairKey, double>{}).first;
    metric_names_.insert(std::string(metric));
  }
  auto [pos, inserted] = it->second.emplace(std::move(key), score);
  if (!inserted) {
    throw std::invalid_argument("duplicate score for " + std::string(metric) + " " +
                                to_string(pos->first));
  }
}

std::optional<double> ScoreTable::find(std::string_view metric, const PairKey& key) const {
  auto it = by_metric_.find(metric);
  if (it == by_metric_.end()) return std::nullopt;
  auto score = it->second.find(key);
  if (score == it->second.end()) return std::nullopt;
  return score->second;
}

std::size_t ScoreTable::size() const {
  std::size_t n = 0;
  for (const auto& [metric, scores] : by_metric_) n += scores.size();
  return n;
}

std::vector<MetricScore> ScoreTable::entries() const {
  std::vector<MetricScore> out;
  out.reserve(size());
  for (const auto& [metric, scores] : by_metric_) {
    for (const auto& [key, score] : scores) out.push_back({metric, key, score});
  }
  return out;
}

const std::map<PairKey, double>& ScoreTable::scores(std::string_view metric) const {
  auto it = by_metric_.find(metric);
  return it == by_metric_.end() ? empty_scores() : it->second;
}

double token_f1(std::string_view statement_text, std::string_view chunk_text) {
  const std::vector<std::string> a = tokenize(statement_text);
  const std::vector<std::string> b = tokenize(chunk_text);
  if (a.empty() || b.empty()) return 0.0;
  std::unordered_map<std::string_view, std::size_t> counts;
  for (const std::string& t : a) ++counts[t];
  std::size_t overlap = 0;
  for (const std::string& t : b) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  const double precision = static_cast<double>(overlap) / static_cast<double>(b.size());
  const double recall = static_cast<double>(overlap) / static_cast<double>(a.size());
  return 2.0 * precision * recall / (precision + recall);
}

double jaccard_metric(std::string_view statement_text, std::string_view chunk_text) {
  return jaccard(statement_text, chunk_text);
}

std::optional<BaselineFn> find_baseline(std::string_view name) {
  if (name == "token_f1") return &token_f1;
  if (name == "jaccard") return &jaccard_metric;
  return std::nullopt;
}

std::vector<std::string> baseline_names() { return {"jaccard", "token_f1"}; }

LoadedScores load_scores(std::istream& in, const std::optional<std::set<PairKey>>& expected) {
  LoadedScores loaded;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (internal::is_blank(text)) continue;
    json record;
    try {
      record = internal::parse_line(text, line);
    } catch (const DataError&) {
      // Bare NaN/Infinity (as written by Python's json module) is not JSON.
      static const std::regex kBareNonFinite(R"re("score"\s*:\s*[-+]?(NaN|Infinity|inf)\b)re",
                                             std::regex::icase);
      if (std::regex_search(text, kBareNonFinite)) {
        throw DataError("non-finite score at line " + std::to_string(line));
      }
      throw;
    }
    const std::string metric = require_string(record, "metric", line);
    PairKey key;
    key.statement_id = require_string(record, "statement_id", line);
    key.citation_id = require_string(record, "citation_id", line);
    const json& index = require_field(record, "chunk_index", line);
    if (!index.is_number_unsigned()) {
      throw line_error(line, "field 'chunk_index' must be a non-negative integer");
    }
    key.chunk_index = index.get<std::size_t>();
    const double score = parse_score(require_field(record, "score", line), line);
    if (loaded.table.find(metric, key)) {
      throw line_error(line, "duplicate key " + metric + " " + to_string(key));
    }
    loaded.table.insert(metric, std::move(key), score);
  }
  if (in.bad()) throw DataError("I/O error while reading score file");

  if (expected) {
    for (const std::string& metric : loaded.table.metric_names()) {
      Coverage coverage;
      coverage.metric = metric;
      const auto& scores = loaded.table.scores(metric);
      for (const PairKey& key : *expected) {
        if (!scores.contains(key)) coverage.missing.push_back(key);
      }
      for (const auto& [key, score] : scores) {
        if (!expected->contains(key)) coverage.extra.push_back(key);
      }
      loaded.coverage.push_back(std::move(coverage));
    }
  }
  return loaded;
}

LoadedScores load_scores(const std::filesystem::path& path,
                         const std::optional<std::set<PairKey>>& expected) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open score file " + path.string());
  return load_scores(in, expected);
}

void write_scores(const ScoreTable& table, std::ostream& out) {
  for (const MetricScore& entry : table.entries()) {
    json record = {{"metric", entry.metric_name},
                   {"statement_id", entry.key.statement_id},
                   {"citation_id", entry.key.citation_id},
                   {"chunk_index", entry.key.chunk_index},
                   {"score", entry.score}};
    out << record.dump() << '\n';
  }
}

AggregationStrategy parse_aggregation_strategy(std::string_view name) {
  if (name == "max") return AggregationStrategy::kMax;
  if (name == "mean") return AggregationStrategy::kMean;
  throw std::invalid_argument("unknown aggregation strategy '" + std::string(name) +
                              "' (expected max or mean)");
}

std::string_view to_string(AggregationStrategy strategy) {
  return strategy == AggregationStrategy::kMax ? "max" : "mean";
}

ScoreTable aggregate_to_citation(const ScoreTable& table, AggregationStrategy strategy) {
  ScoreTable out(Granularity::kCitation);
  for (const std::string& metric : table.metric_names()) {
    // Chunk keys sort by (statement, citation, index), so each group is a run.
    const auto& scores = table.scores(metric);
    auto it = scores.begin();
    while (it != scores.end()) {
      const PairKey& first = it->first;
      double acc = strategy == AggregationStrategy::kMax ? it->second : 0.0;
      std::size_t count = 0;
      auto group = it;
      for (; group != scores.end() && group->first.statement_id == first.statement_id &&
             group->first.citation_id == first.citation_id;
           ++group) {
        if (strategy == AggregationStrategy::kMax) {
          acc = std::max(acc, group->second);
        } else {
          acc += group->second;
        }
        ++count;
      }
      if (strategy == AggregationStrategy::kMean) acc /= static_cast<double>(count);
      out.insert(metric, PairKey{first.statement_id, first.citation_id, 0}, acc);
      it = group;
    }
  }
  return out;
}

}  // namespace citeval
