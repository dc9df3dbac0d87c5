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

#ifndef CITEVAL_REPORT_H_
#define CITEVAL_REPORT_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citeval/corpus.h"
#include "citeval/protocols.h"
#include "citeval/scoring.h"

namespace citeval {

enum class Protocol { kCorrelation, kClassification, kRetrieval };
enum class TableFormat { kMarkdown, kCsv, kJson };

std::string_view to_string(Protocol protocol);
// Both throw std::invalid_argument naming the unknown value.
Protocol parse_protocol(std::string_view name);
TableFormat parse_table_format(std::string_view name);

// One row per metric, ascending by metric name. Correlations use 3
// decimals, AUCs are percentages with 2 decimals, NDCG uses 3 decimals.
// Undefined values render as "n/a" (null in json). Throws
// std::invalid_argument for empty results.
std::string render_table(std::span<const ProtocolResult> results, Protocol protocol,
                         TableFormat format);

// Formatted cell values of one row, without the metric name.
std::vector<std::string> render_row(const ProtocolResult& result, Protocol protocol);

std::string harness_version();

struct RunManifest {
  std::string harness_version;
  std::string corpus_fingerprint;
  std::string config_fingerprint;
  std::string scores_fingerprint;
  std::vector<std::string> metric_names;
  // Unset unless the caller pins it, so repeated exports stay byte-identical.
  std::optional<std::string> created;
  EvaluationConfig config;

  bool operator==(const RunManifest&) const = default;
};

RunManifest make_manifest(const Corpus& corpus, const EvaluationConfig& config,
                          const ScoreTable& scores, std::span<const ProtocolResult> results,
                          std::optional<std::string> created = std::nullopt);

// Writes <dir>/results.jsonl (one object per metric and protocol) and
// <dir>/manifest.json. Throws DataError "fingerprint mismatch" when a result
// was produced under a different config than the manifest records, and
// DataError when the directory cannot be written.
void export_run(std::span<const ProtocolResult> results, const RunManifest& manifest,
                const std::filesystem::path& dir);

struct LoadedRun {
  std::vector<ProtocolResult> results;
  RunManifest manifest;
};

LoadedRun load_run(const std::filesystem::path& dir);

// Serialized forms used by export_run.
std::string results_to_jsonl(std::span<const ProtocolResult> results);
std::string manifest_to_json(const RunManifest& manifest);

}  // namespace citeval

#endif  // CITEVAL_REPORT_H_
