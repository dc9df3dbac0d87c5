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

#include "citeval/protocols.h"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "citeval/hashing.h"
#include "json_util.h"

namespace citeval {
namespace {

using internal::json;

constexpr std::size_t kMaxListedMissing = 10;

std::string missing_message(const std::string& metric, const std::vector<PairKey>& missing) {
  std::string message =
      "metric " + metric + " is missing " + std::to_string(missing.size()) + " score(s):";
  for (std::size_t i = 0; i < missing.size() && i < kMaxListedMissing; ++i) {
    message += " " + to_string(missing[i]);
  }
  if (missing.size() > kMaxListedMissing) message += " ...";
  return message;
}

// Scores aligned with the units; throws MissingScoresError listing every
// unscored unit.
std::vector<double> lookup_scores(std::span<const LabeledChunk> units, const ScoreTable& table,
                                  std::string_view metric) {
  std::vector<double> scores;
  scores.reserve(units.size());
  std::vector<PairKey> missing;
  const auto& by_key = table.scores(metric);
  for (const LabeledChunk& unit : units) {
    PairKey key = key_of(unit);
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      missing.push_back(std::move(key));
    } else {
      scores.push_back(it->second);
    }
  }
  if (!missing.empty()) throw MissingScoresError(std::string(metric), std::move(missing));
  return scores;
}

using UnitKey = std::pair<std::string, std::size_t>;

// Distinct (citation, index) units: citations in first-appearance order,
// indices ascending within a citation.
struct UnitCatalog {
  std::vector<std::string> citation_order;
  std::unordered_map<std::string, std::vector<std::size_t>> indices;
};

UnitCatalog catalog_units(std::span<const LabeledChunk> units) {
  UnitCatalog catalog;
  for (const LabeledChunk& unit : units) {
    auto [it, inserted] = catalog.indices.try_emplace(unit.chunk.citation_id);
    if (inserted) catalog.citation_order.push_back(unit.chunk.citation_id);
    it->second.push_back(unit.chunk.index);
  }
  for (auto& [citation, indices] : catalog.indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  }
  return catalog;
}

}  // namespace

double LevelValues::operator()(SupportLevel level) const {
  switch (level) {
    case SupportLevel::kFull:
      return full;
    case SupportLevel::kPartial:
      return partial;
    case SupportLevel::kNone:
      return none;
  }
  return none;
}

std::string_view to_string(AggregationLevel level) {
  switch (level) {
    case AggregationLevel::kChunk:
      return "chunk_level";
    case AggregationLevel::kCitationMax:
      return "citation_max";
    case AggregationLevel::kCitationMean:
      return "citation_mean";
  }
  return "chunk_level";
}

AggregationLevel parse_aggregation_level(std::string_view name) {
  if (name == "chunk_level") return AggregationLevel::kChunk;
  if (name == "citation_max") return AggregationLevel::kCitationMax;
  if (name == "citation_mean") return AggregationLevel::kCitationMean;
  throw std::invalid_argument("unknown aggregation '" + std::string(name) +
                              "' (expected chunk_level, citation_max or citation_mean)");
}

std::string_view to_string(PoolPolicy policy) {
  return policy == PoolPolicy::kCitedDocs ? "cited_docs" : "cited_docs_plus_distractors";
}

PoolPolicy parse_pool_policy(std::string_view name) {
  if (name == "cited_docs") return PoolPolicy::kCitedDocs;
  if (name == "cited_docs_plus_distractors") return PoolPolicy::kCitedDocsPlusDistractors;
  throw std::invalid_argument("unknown pool policy '" + std::string(name) +
                              "' (expected cited_docs or cited_docs_plus_distractors)");
}

void validate_config(const EvaluationConfig& config) {
  if (config.ndcg_cutoffs.empty()) throw std::invalid_argument("no NDCG cutoffs");
  for (std::size_t i = 0; i < config.ndcg_cutoffs.size(); ++i) {
    if (config.ndcg_cutoffs[i] == 0) throw std::invalid_argument("NDCG cutoffs must be positive");
    if (i > 0 && config.ndcg_cutoffs[i] <= config.ndcg_cutoffs[i - 1]) {
      throw std::invalid_argument("NDCG cutoffs must be strictly increasing");
    }
  }
  const LevelValues& v = config.level_values;
  if (!(v.none < v.partial && v.partial < v.full)) {
    throw std::invalid_argument("level values must satisfy none < partial < full");
  }
  if (!(config.jaccard_threshold >= 0.0 && config.jaccard_threshold <= 1.0)) {
    throw std::invalid_argument("jaccard threshold must lie in [0, 1]");
  }
  if (config.chunk_max_words == 0) throw std::invalid_argument("chunk_max_words must be >= 1");
}

std::string config_to_json(const EvaluationConfig& config) {
  json j = {
      {"level_values",
       {{"full", config.level_values.full},
        {"partial", config.level_values.partial},
        {"none", config.level_values.none}}},
      {"ndcg_cutoffs", config.ndcg_cutoffs},
      {"gain", std::string(stats::to_string(config.gain))},
      {"kendall_variant", std::string(stats::to_string(config.kendall_variant))},
      {"jaccard_threshold", config.jaccard_threshold},
      {"chunk_max_words", config.chunk_max_words},
      {"aggregation", std::string(to_string(config.aggregation))},
      {"pool_policy", std::string(to_string(config.pool_policy))},
      {"distractors", config.distractors},
      {"seed", config.seed},
      {"include_zero_ideal", config.include_zero_ideal},
  };
  return j.dump();
}

EvaluationConfig config_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    EvaluationConfig config;
    const json& levels = j.at("level_values");
    config.level_values = {levels.at("none").get<double>(), levels.at("partial").get<double>(),
                           levels.at("full").get<double>()};
    config.ndcg_cutoffs = j.at("ndcg_cutoffs").get<std::vector<std::size_t>>();
    config.gain = stats::parse_gain(j.at("gain").get<std::string>());
    config.kendall_variant =
        stats::parse_kendall_variant(j.at("kendall_variant").get<std::string>());
    config.jaccard_threshold = j.at("jaccard_threshold").get<double>();
    config.chunk_max_words = j.at("chunk_max_words").get<std::size_t>();
    config.aggregation = parse_aggregation_level(j.at("aggregation").get<std::string>());
    config.pool_policy = parse_pool_policy(j.at("pool_policy").get<std::string>());
    config.distractors = j.at("distractors").get<std::size_t>();
    config.seed = j.at("seed").get<std::uint64_t>();
    config.include_zero_ideal = j.at("include_zero_ideal").get<bool>();
    return config;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed evaluation config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed evaluation config: ") + e.what());
  }
}

std::string config_fingerprint(const EvaluationConfig& config) {
  return sha256_hex(config_to_json(config));
}

MissingScoresError::MissingScoresError(std::string metric, std::vector<PairKey> missing)
    : DataError(missing_message(metric, missing)),
      metric_(std::move(metric)),
      missing_(std::move(missing)) {}

std::optional<double> macro_average(std::span<const std::optional<double>> values) {
  if (values.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& v : values) {
    if (!v) return std::nullopt;
    sum += *v;
  }
  return sum / static_cast<double>(values.size());
}

PairKey key_of(const LabeledChunk& unit) {
  return PairKey{unit.statement_id, unit.chunk.citation_id, unit.chunk.index};
}

std::vector<LabeledChunk> to_citation_units(std::span<const LabeledChunk> chunks) {
  std::vector<LabeledChunk> units;
  std::map<std::pair<std::string_view, std::string_view>, std::size_t> position;
  for (const LabeledChunk& lc : chunks) {
    auto [it, inserted] =
        position.try_emplace({lc.statement_id, lc.chunk.citation_id}, units.size());
    if (inserted) {
      LabeledChunk unit;
      unit.chunk.citation_id = lc.chunk.citation_id;
      unit.chunk.index = 0;
      unit.statement_id = lc.statement_id;
      unit.label = lc.label;
      unit.match_score = lc.match_score;
      units.push_back(std::move(unit));
    } else {
      LabeledChunk& unit = units[it->second];
      unit.label = std::max(unit.label, lc.label);
      unit.match_score = std::max(unit.match_score, lc.match_score);
    }
  }
  return units;
}

CorrelationResult run_correlation(std::span<const LabeledChunk> labeled, const ScoreTable& table,
                                  std::string_view metric, const EvaluationConfig& config) {
  if (labeled.size() < 2) {
    throw std::invalid_argument("correlation needs at least 2 labeled units, got " +
                                std::to_string(labeled.size()));
  }
  const std::vector<double> scores = lookup_scores(labeled, table, metric);
  std::vector<double> levels;
  levels.reserve(labeled.size());
  for (const LabeledChunk& unit : labeled) levels.push_back(config.level_values(unit.label));

  CorrelationResult result;
  result.count = labeled.size();
  result.pearson = stats::pearson(levels, scores);
  result.spearman = stats::spearman(levels, scores);
  result.kendall = stats::kendall_tau(levels, scores, config.kendall_variant);
  return result;
}

ClassificationResult run_classification(std::span<const LabeledChunk> labeled,
                                        const ScoreTable& table, std::string_view metric,
                                        const EvaluationConfig& /*config*/) {
  const std::vector<double> scores = lookup_scores(labeled, table, metric);
  ClassificationResult result;
  std::vector<std::optional<double>> aucs;
  for (const ClassificationSetting& setting : kClassificationSettings) {
    std::vector<double> positives;
    std::vector<double> negatives;
    for (std::size_t i = 0; i < labeled.size(); ++i) {
      if (labeled[i].label == setting.positive) positives.push_back(scores[i]);
      if (labeled[i].label == setting.negative) negatives.push_back(scores[i]);
    }
    SettingResult sr;
    sr.setting = std::string(setting.name);
    sr.positives = positives.size();
    sr.negatives = negatives.size();
    if (!positives.empty() && !negatives.empty()) {
      sr.auc = stats::roc_auc(positives, negatives);
    }
    aucs.push_back(sr.auc);
    result.settings.push_back(std::move(sr));
  }
  result.overall = macro_average(aucs);
  return result;
}

RetrievalPools build_retrieval_pools(const Corpus& corpus, std::span<const LabeledChunk> units,
                                     const EvaluationConfig& config) {
  const UnitCatalog catalog = catalog_units(units);

  std::map<std::tuple<std::string_view, std::string_view, std::size_t>, int> relevance;
  for (const LabeledChunk& unit : units) {
    int& r = relevance[{unit.statement_id, unit.chunk.citation_id, unit.chunk.index}];
    r = std::max(r, relevance_label(unit.label));
  }

  std::unordered_map<std::string_view, std::string_view> response_of;
  for (const Statement& s : corpus.statements) response_of.emplace(s.id, s.response_id);

  // Citations cited within each response, in pair order.
  std::unordered_map<std::string_view, std::vector<std::string_view>> cited_by_response;
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (const AnnotatedPair& pair : corpus.pairs) {
    auto it = response_of.find(pair.statement_id);
    if (it == response_of.end()) continue;
    if (seen.emplace(it->second, pair.citation_id).second) {
      cited_by_response[it->second].push_back(pair.citation_id);
    }
  }

  // Global unit list used as the distractor universe.
  std::vector<std::pair<std::string_view, std::size_t>> all_units;
  for (const std::string& citation : catalog.citation_order) {
    for (std::size_t index : catalog.indices.at(citation)) all_units.emplace_back(citation, index);
  }

  const bool with_distractors =
      config.pool_policy == PoolPolicy::kCitedDocsPlusDistractors && config.distractors > 0;
  std::mt19937_64 rng(config.seed);

  RetrievalPools result;
  for (const Statement& statement : corpus.statements) {
    StatementPool pool;
    pool.statement_id = statement.id;
    std::unordered_set<std::string_view> cited;
    if (auto it = cited_by_response.find(statement.response_id); it != cited_by_response.end()) {
      for (std::string_view citation : it->second) {
        cited.insert(citation);
        auto indices = catalog.indices.find(std::string(citation));
        if (indices == catalog.indices.end()) continue;
        for (std::size_t index : indices->second) {
          auto r = relevance.find({statement.id, citation, index});
          pool.items.push_back(
              PoolItem{std::string(citation), index, r == relevance.end() ? 0 : r->second});
        }
      }
    }
    if (with_distractors) {
      std::vector<std::size_t> candidates;
      for (std::size_t i = 0; i < all_units.size(); ++i) {
        if (!cited.contains(all_units[i].first)) candidates.push_back(i);
      }
      const std::size_t take = std::min(config.distractors, candidates.size());
      // Partial Fisher-Yates; raw engine output keeps the draw identical
      // across standard library implementations.
      for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (candidates.size() - i));
        std::swap(candidates[i], candidates[j]);
        const auto& [citation, index] = all_units[candidates[i]];
        pool.items.push_back(PoolItem{std::string(citation), index, 0});
      }
    }
    if (pool.items.empty()) {
      ++result.empty_pools;
      continue;
    }
    result.pools.push_back(std::move(pool));
  }
  return result;
}

RetrievalResult run_retrieval(const RetrievalPools& pools, const ScoreTable& table,
                              std::string_view metric, const EvaluationConfig& config) {
  const auto& by_key = table.scores(metric);
  std::vector<PairKey> missing;

  RetrievalResult result;
  result.cutoffs = config.ndcg_cutoffs;
  result.empty_pool_excluded = pools.empty_pools;

  struct Ranked {
    double score;
    const PoolItem* item;
  };
  for (const StatementPool& pool : pools.pools) {
    std::vector<Ranked> ranked;
    ranked.reserve(pool.items.size());
    for (const PoolItem& item : pool.items) {
      PairKey key{pool.statement_id, item.citation_id, item.chunk_index};
      auto it = by_key.find(key);
      if (it == by_key.end()) {
        missing.push_back(std::move(key));
        continue;
      }
      ranked.push_back({it->second, &item});
    }
    if (!missing.empty()) continue;
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.item->citation_id != b.item->citation_id) {
        return a.item->citation_id < b.item->citation_id;
      }
      return a.item->chunk_index < b.item->chunk_index;
    });
    std::vector<int> labels;
    labels.reserve(ranked.size());
    for (const Ranked& r : ranked) labels.push_back(r.item->relevance);

    StatementNdcg entry;
    entry.statement_id = pool.statement_id;
    entry.pool_size = labels.size();
    entry.zero_ideal = std::none_of(labels.begin(), labels.end(), [](int l) { return l > 0; });
    for (std::size_t cutoff : config.ndcg_cutoffs) {
      entry.ndcg.push_back(stats::ndcg_at_n(labels, cutoff, config.gain));
    }
    result.per_statement.push_back(std::move(entry));
  }
  if (!missing.empty()) throw MissingScoresError(std::string(metric), std::move(missing));

  std::sort(result.per_statement.begin(), result.per_statement.end(),
            [](const StatementNdcg& a, const StatementNdcg& b) {
              return a.statement_id < b.statement_id;
            });
  std::vector<double> sums(config.ndcg_cutoffs.size(), 0.0);
  for (const StatementNdcg& entry : result.per_statement) {
    if (entry.zero_ideal && !config.include_zero_ideal) {
      ++result.zero_ideal_excluded;
      continue;
    }
    ++result.evaluated;
    for (std::size_t c = 0; c < sums.size(); ++c) sums[c] += entry.ndcg[c];
  }
  for (double sum : sums) {
    result.mean_ndcg.push_back(
        result.evaluated == 0 ? std::nullopt
                              : std::optional<double>(sum / static_cast<double>(result.evaluated)));
  }
  return result;
}

ProtocolSelection parse_protocol_selection(std::string_view name) {
  if (name == "all") return {true, true, true};
  if (name == "correlation") return {true, false, false};
  if (name == "classification") return {false, true, false};
  if (name == "retrieval") return {false, false, true};
  throw std::invalid_argument("unknown protocol '" + std::string(name) +
                              "' (expected correlation, classification, retrieval or all)");
}

std::set<PairKey> required_score_keys(const Corpus& corpus, std::span<const LabeledChunk> chunks,
                                      const EvaluationConfig& config) {
  std::set<PairKey> keys;
  if (config.aggregation == AggregationLevel::kChunk) {
    for (const LabeledChunk& lc : chunks) keys.insert(key_of(lc));
    for (const StatementPool& pool : build_retrieval_pools(corpus, chunks, config).pools) {
      for (const PoolItem& item : pool.items) {
        keys.insert(PairKey{pool.statement_id, item.citation_id, item.chunk_index});
      }
    }
    return keys;
  }
  const UnitCatalog catalog = catalog_units(chunks);
  auto add_citation = [&](const std::string& statement, const std::string& citation) {
    auto it = catalog.indices.find(citation);
    if (it == catalog.indices.end()) return;
    for (std::size_t index : it->second) keys.insert(PairKey{statement, citation, index});
  };
  const std::vector<LabeledChunk> units = to_citation_units(chunks);
  for (const LabeledChunk& unit : units) add_citation(unit.statement_id, unit.chunk.citation_id);
  for (const StatementPool& pool : build_retrieval_pools(corpus, units, config).pools) {
    for (const PoolItem& item : pool.items) add_citation(pool.statement_id, item.citation_id);
  }
  return keys;
}

std::vector<ProtocolResult> evaluate(const Corpus& corpus, std::span<const LabeledChunk> chunks,
                                     const ScoreTable& chunk_scores,
                                     std::span<const std::string> metrics,
                                     ProtocolSelection selection, const EvaluationConfig& config) {
  validate_config(config);
  const std::string fingerprint = config_fingerprint(config);

  std::vector<LabeledChunk> citation_units;
  std::optional<ScoreTable> aggregated;
  std::span<const LabeledChunk> units = chunks;
  const ScoreTable* table = &chunk_scores;
  if (config.aggregation != AggregationLevel::kChunk) {
    citation_units = to_citation_units(chunks);
    units = citation_units;
    aggregated =
        aggregate_to_citation(chunk_scores, config.aggregation == AggregationLevel::kCitationMax
                                                ? AggregationStrategy::kMax
                                                : AggregationStrategy::kMean);
    table = &*aggregated;
  }

  std::optional<RetrievalPools> pools;
  if (selection.retrieval) pools = build_retrieval_pools(corpus, units, config);

  std::vector<std::string> names(metrics.begin(), metrics.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  std::vector<ProtocolResult> results;
  for (const std::string& metric : names) {
    ProtocolResult result;
    result.metric_name = metric;
    result.config_fingerprint = fingerprint;
    if (selection.correlation) result.correlation = run_correlation(units, *table, metric, config);
    if (selection.classification) {
      result.classification = run_classification(units, *table, metric, config);
    }
    if (selection.retrieval) result.retrieval = run_retrieval(*pools, *table, metric, config);
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace citeval
